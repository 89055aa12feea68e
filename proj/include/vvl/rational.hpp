#pragma once

// Exact small rationals for weights, exponents kappa_j and index arithmetic.

#include <cstdint>
#include <numeric>
#include <string>

#include "vvl/types.hpp"

namespace vvl {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long num, long long den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw DomainError("Rational: zero denominator");
    normalize();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  /// Representative of this value modulo 1 in [0, 1).
  Rational frac() const { return Rational(((num_ % den_) + den_) % den_, den_); }
  /// Largest integer <= value.
  long long floor() const {
    const long long q = num_ / den_;
    return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
  }

  /// Parses "p/q" or "p".
  static Rational parse(const std::string& text);
  std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return Rational(x.num_ * y.num_, x.den_ * y.den_);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw DomainError("Rational: division by zero");
    return Rational(x.num_ * y.den_, x.den_ * y.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  friend bool operator==(const Rational& x, const Rational& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
  friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
  friend bool operator<(const Rational& x, const Rational& y) { return x.num_ * y.den_ < y.num_ * x.den_; }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
  friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      const long long p = std::stoll(text, &used);
      if (used != text.size()) throw InputError("bad rational: " + text);
      return Rational(p);
    }
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    const long long p = std::stoll(a, &used);
    if (used != a.size()) throw InputError("bad rational: " + text);
    const long long q = std::stoll(b, &used);
    if (used != b.size() || q <= 0) throw InputError("bad rational: " + text);
    return Rational(p, q);
  } catch (const std::logic_error&) {
    throw InputError("bad rational: " + text);
  }
}

/// Weights live in (1/2)Z.
using Weight = Rational;

inline void validate_weight(const Weight& k) {
  if (k.den() != 1 && k.den() != 2) throw DomainError("weight must lie in (1/2)Z, got " + k.str());
}

/// i^k := e^{i pi k / 2} on the principal branch.
inline Complex i_power(const Weight& k) { return std::exp(kI * (kPi * k.value() / 2.0)); }

}  // namespace vvl
