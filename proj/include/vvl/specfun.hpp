#pragma once

// Special-function kernel: gamma, incomplete gamma (all real parameters),
// Bessel J, confluent hypergeometric M / Whittaker M, and the Laplace
// transform of test functions.

#include "vvl/quadrature.hpp"
#include "vvl/testfn.hpp"
#include "vvl/types.hpp"

namespace vvl {

struct SpecFunConfig {
  double rel_tol = 1e-10;
  int max_terms = 4000;
  QuadratureSpec quad{};

  void validate() const {
    if (!(rel_tol > 0 && rel_tol < 1)) throw DomainError("SpecFunConfig: rel_tol must lie in (0,1)");
    if (max_terms < 32) throw DomainError("SpecFunConfig: max_terms must be >= 32");
    quad.validate();
  }
};

Complex log_gamma(Complex s);
Complex gamma(Complex s);
double gamma(double s);

/// Gamma(a, x) for real a and x > 0; negative a via downward recurrence.
double upper_incomplete_gamma(double a, double x, const SpecFunConfig& cfg = {});
/// e^x Gamma(a, x); avoids underflow for large x.
double upper_incomplete_gamma_scaled(double a, double x, const SpecFunConfig& cfg = {});
/// Right-hand side of Gamma(a,z) = z^a e^{-z} int_0^inf e^{-zt} (1+t)^{a-1} dt,
/// evaluated by half-line quadrature. Kept separate so the two routes can be compared.
double upper_incomplete_gamma_by_integral(double a, double z, const QuadratureSpec& quad = {});

/// Exponential integral E_1(x) = Gamma(0, x), x > 0.
double exponential_integral_e1(double x);

double bessel_j(double v, double x, const SpecFunConfig& cfg = {});

/// Kummer's confluent hypergeometric function M(a, b, z) by direct series.
double hyp1f1(double a, double b, double z, const SpecFunConfig& cfg = {});
/// M_{kappa,mu}(z) = z^{mu+1/2} e^{-z/2} M(mu-kappa+1/2, 1+2mu, z).
double whittaker_m(double kappa, double mu, double z, const SpecFunConfig& cfg = {});

/// (L phi)(u) = int_0^inf e^{-u t} phi(t) dt. Closed forms are used for the
/// power kernel and plain polynomial bumps; everything else is integrated.
Complex laplace(const TestFunction& phi, Complex u, const SpecFunConfig& cfg = {});

/// Integral of e^{-u w} w^n over [0, L].
Complex truncated_moment(int n, Complex u, double L);

}  // namespace vvl
