#pragma once

// L-series attached to vector-valued expansions: classical Dirichlet series,
// the completed L-function, Laplace-transform L-series for weak and harmonic
// forms, functional-equation residuals, the continued L(s, f, phi), Mellin
// inversion and the converse-theorem falsifier.

#include <string>
#include <vector>

#include "vvl/expansion.hpp"
#include "vvl/specfun.hpp"
#include "vvl/testfn.hpp"

namespace vvl {

struct LSeriesValue {
  VectorXc value;
  Eigen::VectorXd error;  ///< per-component truncation estimate (size of the last retained term)
};

struct LSeriesOptions {
  SpecFunConfig specfun{};
  /// A coefficient sum stops once 5 consecutive terms fall below this
  /// fraction of the running sum (or are exactly zero).
  double term_rel_tol = 1e-18;
  /// Weight of the inner t-integral in the nonholomorphic terms.
  QuadratureSpec inner_quad{};
};

/// phi|_{w,chi^{-1}} S : x -> x^{-w} chi(S) phi(1/x), with chi the form's multiplier.
TestFunction slash_testfn(const TestFunction& phi, const Weight& w, const MultiplierSystem& chi);

/// sum_j sum_n a_j(n) (n + kappa_j)^{-s} e_j over all stored coefficients.
/// Throws DomainError when Re(s) <= k/2 + 1 (outside absolute convergence for
/// coefficients of size n^{k/2}) or when f is not cuspidal.
LSeriesValue classical_L(const FourierExpansion& f, const Weight& k, Complex s);

/// Lambda(s) = int_0^inf f(iy) y^{s-1} dy split at y = nu and folded with the
/// S-transformation law of ctx:
///   sum a(n) [ (2 pi w)^{-s} Gamma(s, 2 pi w nu) + i^k chi(S) rho(S) (2 pi w)^{s-k} Gamma(k-s, 2 pi w / nu) ].
/// Valid for all real s when f is a cusp form and ctx is its transformation law.
LSeriesValue completed_L(const FourierExpansion& f, const FormContext& ctx, double s, double nu = 1.0,
                         const LSeriesOptions& opt = {});

/// L_f(phi) = sum a_j(n) (L phi)(2 pi (n + kappa_j)) e_j.
LSeriesValue L_weak(const FourierExpansion& f, const TestFunction& phi, const LSeriesOptions& opt = {});

/// Holomorphic part as L_weak plus, for each c^-_j(n),
///   c^- (4 pi a)^{1-k} int_0^inf (L phi_{2-k})(2 pi a (2t+1)) (1+t)^{-k} dt,   a = -(n + kappa_j).
LSeriesValue L_harmonic(const HarmonicMaassExpansion& f, const TestFunction& phi, const LSeriesOptions& opt = {});

/// L_{delta_k f}(phi) = (k/2) L_f(phi) - 2 pi sum c^+ w (L phi_2)(2 pi w)
///   - 2 pi sum c^- w (4 pi a)^{1-k} int (L phi_{3-k})(2 pi a (2t+1)) (1+t)^{-k} dt.
LSeriesValue L_delta(const HarmonicMaassExpansion& f, const TestFunction& phi, const LSeriesOptions& opt = {});

/// int_0^inf f(iy) phi(y) dy by direct quadrature of evaluate_form; the
/// reference side of the integral representation.
VectorXc L_by_quadrature(const HarmonicMaassExpansion& f, const TestFunction& phi, bool delta = false,
                         const QuadratureSpec& quad = {});

enum class FEMode { Plain, Delta };

struct FEReport {
  LSeriesValue lhs, rhs;
  double residual = 0;      ///< ||lhs - rhs||_inf / max(||lhs||_inf, ||rhs||_inf); 0 when both vanish
  double abs_residual = 0;  ///< ||lhs - rhs||_inf
  std::string testfn_id;
  double threshold = 0;
  bool pass = true;
  FEMode mode = FEMode::Plain;
};

/// lhs = L(phi), rhs = (+/-) i^k rho(S) L(phi|_{2-k,chi^{-1}} S), minus sign in delta mode.
FEReport fe_residual(const HarmonicMaassExpansion& f, const FormContext& ctx, const TestFunction& phi,
                     FEMode mode = FEMode::Plain, double threshold = 1e-8, const LSeriesOptions& opt = {});

/// L(s, f, phi) = int_1^inf f(iy) phi(y) y^{s-1} dy + i^k rho(S) int_1^inf f(iy) (phi|_{1-k,chi^{-1}}S)(y) y^{-s} dy,
/// entire in s. Requires phi(x) and phi(1/x) to decay faster than e^{-2 pi n0 x}.
LSeriesValue L_continued(const HarmonicMaassExpansion& f, const FormContext& ctx, const TestFunction& phi, Complex s,
                         const LSeriesOptions& opt = {});

struct MellinReport {
  VectorXc recovered;
  VectorXc direct;
  double error = 0;       ///< ||recovered - direct||_inf
  double tail_proxy = 0;  ///< |L_f(phi_s)| at the ends of the truncated line
};

/// Recovers f(iy) phi(y) as (1/2 pi i) int_{(c)} L_f(phi_s) y^{-s} ds on a truncated line.
MellinReport mellin_roundtrip(const HarmonicMaassExpansion& f, const TestFunction& phi, double y,
                              const LineIntegralSpec& line = {}, const LSeriesOptions& opt = {});

struct ConverseReport {
  bool consistent = true;
  double worst_residual = 0;
  std::string worst_id;
  FEMode worst_mode = FEMode::Plain;
  std::vector<FEReport> reports;
  double threshold = 0;
};

/// Runs fe_residual over the family (plain mode, and delta mode when c^- is
/// present). A numerical falsifier: CONSISTENT means no tested phi refuted the
/// functional equation, not that f is modular.
ConverseReport converse_check(const HarmonicMaassExpansion& f, const FormContext& ctx,
                              const std::vector<TestFunction>& family, double threshold = 1e-6,
                              const LSeriesOptions& opt = {});

/// `count` polynomial bumps of degree p with log-spaced, overlapping supports covering [lo, hi].
std::vector<TestFunction> covering_bumps(double lo, double hi, int count, int p = 3);

struct SummationSides {
  Complex lhs{0.0};
  Complex rhs{0.0};
  double residual = 0;
};

/// Both sides of the summation formula for component j (0-based):
///   lhs = sum c^+_g(n) int phi(y) (e^{-2 pi w y} - (-iy)^{k-2} e^{-2 pi w / y}) dy,  w = n + kappa_j(g)
///   rhs = sum_{l=0}^{k-2} sum_n conj(a_f(n)) [ ((k-2)!/l!) (4 pi d)^{1-k+l} int e^{-2 pi d y} y^l phi dy
///         + 2^{l+1}/(k-1) (8 pi d)^{-k/2} int e^{-pi d y} y^{k/2-1} phi(y) M_{1-k/2+l,(k-1)/2}(2 pi d y) dy ],
/// d the frequency of a_f(n). Requires shadow(g, k) == f to 1e-8 and even k >= 4.
SummationSides summation_formula_sides(const FourierExpansion& f, const HarmonicMaassExpansion& g,
                                       const TestFunction& phi, int j, const Weight& k,
                                       const QuadratureSpec& quad = {});

struct PhiTransformSides {
  Complex lhs{0.0};  ///< (4 pi d)^{1-k} int Gamma(k-1, 4 pi d y) e^{2 pi d y} phi(y) dy
  Complex rhs{0.0};  ///< sum_l ((k-2)!/l!) (4 pi d)^{1-k+l} int e^{-2 pi d y} y^l phi(y) dy
  double residual = 0;
};

/// The two sides of L(Phi(phi))(2 pi d) used in the summation-formula proof.
PhiTransformSides phi_transform_sides(int k, double d, const TestFunction& phi, const QuadratureSpec& quad = {});

}  // namespace vvl
