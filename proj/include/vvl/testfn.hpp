#pragma once

#include <optional>
#include <string>
#include <utility>

#include "vvl/types.hpp"

namespace vvl {

enum class TestFamily {
  PolyBump,        ///< ((x-a)(b-x)/h^2)^p on [a,b], h = (b-a)/2; max value 1
  ExpBump,         ///< exp(1 - 1/(1-w^2)), w = (2x-a-b)/(b-a); max value 1
  SymmetricDecay,  ///< x^alpha exp(-beta (x + 1/x))
  Kernel,          ///< I_s(x) = (2 pi)^s x^{s-1} / Gamma(s)
};

/// A test function on the positive reals, stored as
///   scale * x^power * base(inverted ? 1/x : x)
/// so that power weighting (phi_s) and the S-slash stay inside the type.
class TestFunction {
 public:
  static TestFunction poly_bump(double a, double b, int p);
  static TestFunction exp_bump(double a, double b);
  static TestFunction symmetric_decay(double alpha, double beta);
  static TestFunction kernel(Complex s);

  Complex operator()(double x) const;

  /// x -> phi(x) x^{s-1}
  TestFunction power_weighted(Complex s) const;
  /// x -> factor * x^{-w} * phi(1/x)
  TestFunction slashed(Complex w, Complex factor) const;
  TestFunction scaled(Complex c) const;

  TestFamily family() const { return family_; }
  double a() const { return a_; }
  double b() const { return b_; }
  int p() const { return p_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  Complex kernel_s() const { return kernel_s_; }
  Complex scale() const { return scale_; }
  Complex power() const { return power_; }
  bool inverted() const { return inverted_; }

  /// [lo, hi] for compactly supported families.
  std::optional<std::pair<double, double>> support() const;
  bool compact() const { return support().has_value(); }

  /// Laplace transform converges for Re(u) > abscissa(); -inf when compact.
  double abscissa() const;
  /// Exponential decay rate at infinity (0 for the power kernel, +inf when compact).
  double decay_rate() const;
  /// The plain base family with no weighting, slash or scale applied.
  bool is_plain() const { return scale_ == Complex(1.0) && power_ == Complex(0.0) && !inverted_; }

  std::string id() const;

 private:
  TestFunction() = default;
  Complex base(double x) const;

  TestFamily family_ = TestFamily::PolyBump;
  double a_ = 0, b_ = 0;
  int p_ = 0;
  double alpha_ = 0, beta_ = 0;
  Complex kernel_s_{0.0};
  Complex scale_{1.0};
  Complex power_{0.0};
  bool inverted_ = false;
};

}  // namespace vvl
