#pragma once

// Jacobi forms of weight k and index m through their theta decomposition
// F(tau, z) = sum_j F_j(tau) theta_{m,j}(tau, z), and half-integral weight
// forms in the Kohnen plus space through the index-1 case.
//
// The components F_j form a vector of weight k - 1/2 with exponents
// kappa_j = ((-j^2) mod 4m) / 4m, stored as a HarmonicMaassExpansion whose
// component j - 1 carries theta index j (j = 1..2m).

#include <map>
#include <optional>
#include <utility>

#include "vvl/expansion.hpp"
#include "vvl/lseries.hpp"

namespace vvl {

using JacobiKey = std::pair<long long, long long>;  ///< (l, r)
using JacobiCoefficientMap = std::map<JacobiKey, Complex>;

/// sum c^+(l, r) q^l zeta^r + sum c^-(l, r) Gamma(3/2 - k, pi |D| v / m) q^l zeta^r,
/// D = 4ml - r^2. c^- is supported on D < 0. Each stored (l, r) stands for its
/// whole class (D, r mod 2m): a Jacobi form's coefficients depend only on that.
struct JacobiExpansion {
  int weight = 0;  ///< positive even integer
  int index = 1;   ///< m >= 1
  JacobiCoefficientMap plus;
  JacobiCoefficientMap minus;
  double growth_C = 0.0;  ///< declared |c(l, r)| = O(e^{C sqrt |D|})

  JacobiExpansion() = default;
  JacobiExpansion(int k, int m) : weight(k), index(m) {}

  long long discriminant(long long l, long long r) const { return 4LL * index * l - r * r; }
  void set_plus(long long l, long long r, Complex c);
  void set_minus(long long l, long long r, Complex c);
  bool has_minus() const;
  /// Weight and index ranges, c^- support, and that entries of one class agree.
  void validate() const;
};

struct JacobiValue {
  Complex value{0.0};
  double tail_bound = 0.0;
  bool truncation_ok = true;
};

/// kappa_j = ((-j^2) mod 4m) / 4m.
Rational theta_kappa(int m, long long j);

/// theta_{m,j}(tau, z) = sum_{r = j mod 2m} e^{pi i r^2 tau / 2m} e^{2 pi i r z}.
/// With a truncation T only r = j0 + 2mt, |t| <= T are kept (j0 in [0, 2m)),
/// otherwise terms are summed outward from the Gaussian peak until negligible.
JacobiValue theta_series(int m, long long j, Complex tau, Complex z, std::optional<long long> truncation = {});

/// Component vector (F_1, ..., F_2m): class (D, j) lands in component j at
/// frequency D / 4m. Throws InputError on class-invariance violations.
HarmonicMaassExpansion theta_decompose(const JacobiExpansion& F);

/// sum_j F_j(tau) theta_{m,j}(tau, z).
JacobiValue theta_reconstruct(const HarmonicMaassExpansion& components, int m, Complex tau, Complex z,
                              std::optional<long long> truncation = {});

/// Direct evaluation as a double sum over classes and r = j mod 2m.
JacobiValue jacobi_evaluate(const JacobiExpansion& F, Complex tau, Complex z);

/// Weight k - 1/2, multiplier conj(chi_eta), representation conj(rho_m) twisted by chi_eta.
FormContext jacobi_context(int k, int m, long long n0 = 0);

/// L_m = (2m / pi i) d/dtau - (2 pi i)^{-2} d^2/dz^2, acting as c(l, r) -> (4ml - r^2) c(l, r).
/// Holomorphic input only.
JacobiExpansion heat_operator(const JacobiExpansion& F);

/// alpha_k F = tau (dF/dtau-bar + (pi i / 2m) L_m F) + ((2k - 1)/4) F, applied term by term.
JacobiValue alpha_k_evaluate(const JacobiExpansion& F, Complex tau, Complex z);

/// L_F(phi): L_harmonic of the theta components.
LSeriesValue jacobi_L(const JacobiExpansion& F, const TestFunction& phi, const LSeriesOptions& opt = {});
/// L_{alpha_k F}(phi): L_delta of the theta components at weight k - 1/2.
LSeriesValue jacobi_alpha_L(const JacobiExpansion& F, const TestFunction& phi, const LSeriesOptions& opt = {});

/// L_F(phi) = i^{k-1/2} conj(rho_m)(S) L_F(phi|_{5/2-k, chi_eta} S), with the minus sign for alpha_k (delta mode).
FEReport jacobi_fe_residual(const JacobiExpansion& F, const TestFunction& phi, FEMode mode = FEMode::Plain,
                            double threshold = 1e-6, const LSeriesOptions& opt = {});

/// L(F, j, s) = sum c((n + j^2)/4m, j) (n / 4m)^{-s} over n > 0, n = -j^2 mod 4m, j = 1..2m.
/// For cusp data. Throws DomainError for Re(s) <= (k - 1/2)/2 + 1 unless finite is
/// set, which declares the stored classes to be the complete series.
Complex partial_L(const JacobiExpansion& F, int j, Complex s, bool finite = false);

/// psi_k(F)(tau) = F_1(4 tau) + F_2(4 tau) as a scalar expansion of weight k - 1/2
/// supported on n = 0, 3 mod 4. Index 1 only.
HarmonicMaassExpansion kohnen_map(const JacobiExpansion& F);
HarmonicMaassExpansion kohnen_map(const HarmonicMaassExpansion& components);

/// Inverse of kohnen_map on plus-space data: a_{f,j}(n) = a_f(n) for n = -j^2 mod 4,
/// returned as the component vector F(tau) = sum_j f_j(tau/4) e_j.
/// Throws InputError on a coefficient at n = 1, 2 mod 4.
HarmonicMaassExpansion plus_split(const HarmonicMaassExpansion& f);

/// L(f, j, s) = sum a_{f,j}(n) n^{-s} over n > 0; same domain rule as partial_L.
Complex plus_partial_L(const HarmonicMaassExpansion& f, int j, Complex s, bool finite = false);

/// Functional equation of the plus-space vector through the index-1 Weil machinery.
FEReport plus_fe_residual(const HarmonicMaassExpansion& f, const TestFunction& phi, FEMode mode = FEMode::Plain,
                          double threshold = 1e-6, const LSeriesOptions& opt = {});

}  // namespace vvl
