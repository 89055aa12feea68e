#include "vvl/testfn.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "vvl/specfun.hpp"

namespace vvl {

TestFunction TestFunction::poly_bump(double a, double b, int p) {
  if (!(a > 0 && a < b)) throw DomainError("poly_bump: need 0 < a < b");
  if (p < 0 || p > 16) throw DomainError("poly_bump: p must lie in [0, 16]");
  TestFunction f;
  f.family_ = TestFamily::PolyBump;
  f.a_ = a;
  f.b_ = b;
  f.p_ = p;
  return f;
}

TestFunction TestFunction::exp_bump(double a, double b) {
  if (!(a > 0 && a < b)) throw DomainError("exp_bump: need 0 < a < b");
  TestFunction f;
  f.family_ = TestFamily::ExpBump;
  f.a_ = a;
  f.b_ = b;
  return f;
}

TestFunction TestFunction::symmetric_decay(double alpha, double beta) {
  if (!(beta > 0)) throw DomainError("symmetric_decay: beta must be positive");
  TestFunction f;
  f.family_ = TestFamily::SymmetricDecay;
  f.alpha_ = alpha;
  f.beta_ = beta;
  return f;
}

TestFunction TestFunction::kernel(Complex s) {
  if (s.imag() == 0.0 && s.real() <= 0 && std::floor(s.real()) == s.real()) {
    throw PoleError("I_s kernel: Gamma(s) has a pole");
  }
  TestFunction f;
  f.family_ = TestFamily::Kernel;
  f.kernel_s_ = s;
  return f;
}

Complex TestFunction::base(double x) const {
  switch (family_) {
    case TestFamily::PolyBump: {
      if (x <= a_ || x >= b_) return p_ == 0 && (x == a_ || x == b_) ? 1.0 : 0.0;
      const double h = 0.5 * (b_ - a_);
      return std::pow((x - a_) * (b_ - x) / (h * h), p_);
    }
    case TestFamily::ExpBump: {
      if (x <= a_ || x >= b_) return 0.0;
      const double w = (2.0 * x - a_ - b_) / (b_ - a_);
      return std::exp(1.0 - 1.0 / (1.0 - w * w));
    }
    case TestFamily::SymmetricDecay:
      return std::pow(x, alpha_) * std::exp(-beta_ * (x + 1.0 / x));
    case TestFamily::Kernel:
      return std::exp(kernel_s_ * std::log(2.0 * kPi) + (kernel_s_ - 1.0) * std::log(x) -
                      log_gamma(kernel_s_));
  }
  return 0.0;
}

Complex TestFunction::operator()(double x) const {
  if (!(x > 0)) return 0.0;
  const double arg = inverted_ ? 1.0 / x : x;
  const Complex v = base(arg);
  if (v == Complex(0.0)) return 0.0;
  if (power_ == Complex(0.0)) return scale_ * v;
  return scale_ * std::exp(power_ * std::log(x)) * v;
}

TestFunction TestFunction::power_weighted(Complex s) const {
  TestFunction f = *this;
  f.power_ += s - 1.0;
  return f;
}

TestFunction TestFunction::slashed(Complex w, Complex factor) const {
  TestFunction f = *this;
  f.scale_ *= factor;
  f.power_ = -w - power_;
  f.inverted_ = !inverted_;
  return f;
}

TestFunction TestFunction::scaled(Complex c) const {
  TestFunction f = *this;
  f.scale_ *= c;
  return f;
}

std::optional<std::pair<double, double>> TestFunction::support() const {
  if (family_ != TestFamily::PolyBump && family_ != TestFamily::ExpBump) return std::nullopt;
  if (inverted_) return std::make_pair(1.0 / b_, 1.0 / a_);
  return std::make_pair(a_, b_);
}

double TestFunction::abscissa() const {
  switch (family_) {
    case TestFamily::PolyBump:
    case TestFamily::ExpBump:
      return -std::numeric_limits<double>::infinity();
    case TestFamily::SymmetricDecay:
      return -beta_;
    case TestFamily::Kernel:
      return 0.0;
  }
  return 0.0;
}

double TestFunction::decay_rate() const {
  switch (family_) {
    case TestFamily::SymmetricDecay:
      return beta_;
    case TestFamily::Kernel:
      return 0.0;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

std::string TestFunction::id() const {
  std::ostringstream os;
  os.precision(6);
  switch (family_) {
    case TestFamily::PolyBump:
      os << "poly_bump(" << a_ << "," << b_ << "," << p_ << ")";
      break;
    case TestFamily::ExpBump:
      os << "exp_bump(" << a_ << "," << b_ << ")";
      break;
    case TestFamily::SymmetricDecay:
      os << "symmetric_decay(" << alpha_ << "," << beta_ << ")";
      break;
    case TestFamily::Kernel:
      os << "I_s(" << kernel_s_.real() << (kernel_s_.imag() < 0 ? "" : "+") << kernel_s_.imag() << "i)";
      break;
  }
  if (inverted_) os << "|S";
  if (power_ != Complex(0.0)) os << "*x^(" << power_.real() << "," << power_.imag() << ")";
  if (scale_ != Complex(1.0)) os << "*(" << scale_.real() << "," << scale_.imag() << ")";
  return os.str();
}

}  // namespace vvl
