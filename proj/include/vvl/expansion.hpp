#pragma once

// Vector-valued Fourier and harmonic Maass expansions with sparse coefficient
// maps, their pointwise evaluation, the delta_k operator and diagnostics for
// the slash action and the weight-k Laplacian.

#include <map>
#include <optional>
#include <vector>

#include "vvl/multiplier.hpp"
#include "vvl/rational.hpp"
#include "vvl/types.hpp"

namespace vvl {

using CoefficientMap = std::map<long long, Complex>;

/// sum_j sum_n a_j(n) e^{2 pi i (n + kappa_j) tau} e_j
struct FourierExpansion {
  std::vector<Rational> kappa;          ///< 0 <= kappa_j < 1
  std::vector<CoefficientMap> coeffs;   ///< a_j(n); zero entries are never stored
  long long n0 = 0;                     ///< f_j = O(e^{2 pi n0 v}) as v -> infinity
  double growth_C = 0.0;                ///< declared |a_j(n)| = O(e^{C sqrt n})

  FourierExpansion() = default;
  explicit FourierExpansion(std::vector<Rational> kappa_);
  static FourierExpansion scalar(Rational kappa = Rational(0));

  int dim() const { return static_cast<int>(kappa.size()); }
  void set(int j, long long n, Complex c);
  Complex get(int j, long long n) const;
  bool empty() const;
  /// Largest n with a stored coefficient, over all components.
  long long max_index() const;
  /// Smallest n0 >= 0 compatible with the stored support.
  long long minimal_n0() const;
  /// Checks kappa ranges and that n0 covers every negative frequency.
  void validate() const;
  double frequency(int j, long long n) const { return static_cast<double>(n) + kappa[j].value(); }
};

/// Holomorphic part c^+ plus nonholomorphic coefficients c^-_j(n) attached to
/// Gamma(1-k, -4 pi (n+kappa_j) v) e^{2 pi i (n+kappa_j) tau}, n + kappa_j < 0.
struct HarmonicMaassExpansion {
  Weight weight{0};
  FourierExpansion plus;
  std::vector<CoefficientMap> minus;

  HarmonicMaassExpansion() = default;
  HarmonicMaassExpansion(Weight k, FourierExpansion holomorphic);

  int dim() const { return plus.dim(); }
  const std::vector<Rational>& kappa() const { return plus.kappa; }
  void set_minus(int j, long long n, Complex c);
  bool has_minus() const;
  void validate() const;
};

struct FormContext {
  Weight weight{0};
  MultiplierSystem multiplier;
  Representation representation;
  long long n0 = 0;

  CompatibilityReport compatibility(double tol = 1e-12) const {
    return check_compatibility(weight, multiplier, representation, tol);
  }
};

struct FormValue {
  VectorXc value;
  double tail_bound = 0.0;     ///< estimate of the omitted terms from the growth tag
  bool truncation_ok = true;   ///< tail_bound <= tol * max(1, |value|)
};

struct EvalOptions {
  std::optional<long long> truncation;  ///< keep |n| <= N; default: all stored terms
  double tol = 1e-12;
};

FormValue evaluate_form(const HarmonicMaassExpansion& f, Complex tau, const EvalOptions& opt = {});
FormValue evaluate_form(const FourierExpansion& f, Complex tau, const EvalOptions& opt = {});

/// (delta_k f)(tau) = tau df/du + (k/2) f, differentiated term by term in u.
FormValue delta_k_evaluate(const HarmonicMaassExpansion& f, Complex tau, const EvalOptions& opt = {});

/// Shadow of g (weight 2-k) as a cusp form of weight k. The keys n of g.minus
/// are read in the conjugate-index convention, n - kappa_j > 0, and
///   a_j(n) = -conj(c^-_j(n)) (4 pi (n - kappa_j))^{k-1}.
/// The returned expansion stores frequency n - kappa_j with exponent
/// (1 - kappa_j) mod 1 and the key shifted accordingly.
FourierExpansion shadow(const HarmonicMaassExpansion& g, const Weight& k);

/// max over samples of ||(f|gamma)(tau) - f(tau)||_inf / max(||f(tau)||, ||(f|gamma)(tau)||),
/// (f|gamma)(tau) = (c tau + d)^{-k} chi(gamma)^{-1} rho(gamma)^{-1} f(gamma tau).
double slash_residual(const HarmonicMaassExpansion& f, const FormContext& ctx, const GroupElement& gamma,
                      const std::vector<Complex>& samples, const EvalOptions& opt = {});
/// The default sample box {i, 2i, 1+i}.
std::vector<Complex> default_slash_samples();

/// |Delta_k f(tau)| / |f(tau)| with fourth-order central differences of step h,
/// Delta_k = -v^2 (f_uu + f_vv) + i k v (f_u + i f_v).
double laplacian_residual(const HarmonicMaassExpansion& f, Complex tau, double h);

/// Single-term convenience: coefficient c at index n of component kappa,
/// nonholomorphic when `holomorphic` is false.
HarmonicMaassExpansion single_term(const Weight& k, const Rational& kappa, long long n, Complex c,
                                   bool holomorphic);

}  // namespace vvl
