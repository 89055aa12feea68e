#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace vvl {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole (e.g. gamma at a nonpositive integer).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive method did not reach its tolerance.
/// The best available estimate is carried along.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Complex best, double error_estimate)
      : Error(what), best_(best), error_estimate_(error_estimate) {}
  Complex best() const { return best_; }
  double error_estimate() const { return error_estimate_; }

 private:
  Complex best_;
  double error_estimate_;
};

/// A test function is not admissible for the requested L-series.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (files, coefficient tables, index invariants).
class InputError : public Error {
 public:
  using Error::Error;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// e^{2 pi i x}
inline Complex e2pi(double x) { return std::polar(1.0, 2.0 * kPi * x); }

}  // namespace vvl
