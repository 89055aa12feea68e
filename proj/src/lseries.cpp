#include "vvl/lseries.hpp"

#include <algorithm>
#include <cmath>

namespace vvl {

namespace {

double inf_norm(const VectorXc& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Accumulates term(j, n, c) over one coefficient table with the early-stop rule.
template <class Term>
void accumulate(const std::vector<CoefficientMap>& table, LSeriesValue& out, const LSeriesOptions& opt, Term&& term) {
  for (size_t j = 0; j < table.size(); ++j) {
    int small_run = 0;
    for (const auto& [n, c] : table[j]) {
      const Complex t = term(static_cast<int>(j), n, c);
      if (!is_finite(t)) {
        throw MembershipError("L-series term is not finite (component " + std::to_string(j + 1) +
                              ", n = " + std::to_string(n) + ")");
      }
      out.value(j) += t;
      out.error(j) = std::abs(t);
      const bool small = std::abs(t) <= opt.term_rel_tol * std::abs(out.value(j));
      small_run = small ? small_run + 1 : 0;
      if (small_run >= 5) break;
    }
  }
}

LSeriesValue zero_value(int dim) { return {VectorXc::Zero(dim), Eigen::VectorXd::Zero(dim)}; }

// int_0^inf (L psi)(2 pi a (2t+1)) (1+t)^{-k} dt
Complex nonholomorphic_inner(const TestFunction& psi, double a, double k, const LSeriesOptions& opt) {
  auto g = [&](double t) { return laplace(psi, 2.0 * kPi * a * (2.0 * t + 1.0), opt.specfun) * std::pow(1.0 + t, -k); };
  double hint = 0.0;
  if (auto sup = psi.support()) hint = 4.0 * kPi * a * sup->first;
  return integrate_tail(g, 0.0, opt.inner_quad.with_decay(hint));
}

void check_compatible_dims(const HarmonicMaassExpansion& f, const FormContext& ctx) {
  if (ctx.representation.dim != f.dim()) {
    throw DomainError("representation dimension " + std::to_string(ctx.representation.dim) +
                      " does not match expansion dimension " + std::to_string(f.dim()));
  }
}

// sum over terms of int_1^inf (term at iy) g(y) dy
VectorXc tail_pairing(const HarmonicMaassExpansion& f, const TestFunction& g, const LSeriesOptions& opt) {
  const double k = f.weight.value();
  VectorXc out = VectorXc::Zero(f.dim());
  const auto sup = g.support();
  auto integrate = [&](auto&& h, double decay) -> Complex {
    if (sup) {
      const double lo = std::max(1.0, sup->first), hi = sup->second;
      if (hi <= lo) return 0.0;
      return integrate_finite(h, lo, hi, opt.specfun.quad);
    }
    return integrate_tail(h, 1.0, opt.specfun.quad.with_decay(std::max(0.0, decay)));
  };
  for (int j = 0; j < f.dim(); ++j) {
    const double kap = f.plus.kappa[j].value();
    for (const auto& [n, c] : f.plus.coeffs[j]) {
      const double w = double(n) + kap;
      auto h = [&](double y) {
        const Complex v = g(y);
        return v == Complex(0.0) ? v : std::exp(-2.0 * kPi * w * y) * v;
      };
      out(j) += c * integrate(h, 2.0 * kPi * w + g.decay_rate());
    }
    for (const auto& [n, c] : f.minus[j]) {
      const double a = -(double(n) + kap);
      auto h = [&](double y) {
        const Complex v = g(y);
        if (v == Complex(0.0)) return v;
        const double x = 4.0 * kPi * a * y;
        return upper_incomplete_gamma_scaled(1.0 - k, x, opt.specfun) * std::exp(-2.0 * kPi * a * y) * v;
      };
      out(j) += c * integrate(h, 2.0 * kPi * a + g.decay_rate());
    }
  }
  return out;
}

}  // namespace

TestFunction slash_testfn(const TestFunction& phi, const Weight& w, const MultiplierSystem& chi) {
  return phi.slashed(Complex(w.value()), chi(GroupElement::S()));
}

LSeriesValue classical_L(const FourierExpansion& f, const Weight& k, Complex s) {
  if (!(s.real() > k.value() / 2.0 + 1.0)) {
    throw DomainError("classical_L: Re(s) must exceed k/2 + 1 for absolute convergence");
  }
  LSeriesValue out = zero_value(f.dim());
  for (int j = 0; j < f.dim(); ++j) {
    for (const auto& [n, c] : f.coeffs[j]) {
      const double w = f.frequency(j, n);
      if (!(w > 0)) throw DomainError("classical_L: f must be cuspidal (n + kappa_j > 0 on the support)");
      const Complex t = c * std::exp(-s * std::log(w));
      out.value(j) += t;
      out.error(j) = std::abs(t);
    }
  }
  return out;
}

LSeriesValue completed_L(const FourierExpansion& f, const FormContext& ctx, double s, double nu,
                         const LSeriesOptions& opt) {
  if (!(nu > 0)) throw DomainError("completed_L: split point must be positive");
  if (ctx.representation.dim != f.dim()) throw DomainError("completed_L: representation dimension mismatch");
  const double k = ctx.weight.value();
  VectorXc direct = VectorXc::Zero(f.dim()), folded = VectorXc::Zero(f.dim());
  Eigen::VectorXd err = Eigen::VectorXd::Zero(f.dim());
  for (int j = 0; j < f.dim(); ++j) {
    for (const auto& [n, c] : f.coeffs[j]) {
      const double w = f.frequency(j, n);
      if (!(w > 0)) throw DomainError("completed_L: f must be cuspidal");
      const double x = 2.0 * kPi * w;
      const double g1 = upper_incomplete_gamma_scaled(s, x * nu, opt.specfun) * std::exp(-x * nu - s * std::log(x));
      const double g2 =
          upper_incomplete_gamma_scaled(k - s, x / nu, opt.specfun) * std::exp(-x / nu + (s - k) * std::log(x));
      direct(j) += c * g1;
      folded(j) += c * g2;
      err(j) = std::abs(c) * (std::abs(g1) + std::abs(g2));
    }
  }
  const GroupElement S = GroupElement::S();
  const MatrixXc factor = i_power(ctx.weight) * ctx.multiplier(S) * ctx.representation(S);
  return {direct + factor * folded, err};
}

LSeriesValue L_weak(const FourierExpansion& f, const TestFunction& phi, const LSeriesOptions& opt) {
  LSeriesValue out = zero_value(f.dim());
  accumulate(f.coeffs, out, opt, [&](int j, long long n, Complex c) {
    return c * laplace(phi, 2.0 * kPi * f.frequency(j, n), opt.specfun);
  });
  return out;
}

LSeriesValue L_harmonic(const HarmonicMaassExpansion& f, const TestFunction& phi, const LSeriesOptions& opt) {
  LSeriesValue out = L_weak(f.plus, phi, opt);
  if (!f.has_minus()) return out;
  const double k = f.weight.value();
  const TestFunction psi = phi.power_weighted(2.0 - k);
  LSeriesValue minus = zero_value(f.dim());
  accumulate(f.minus, minus, opt, [&](int j, long long n, Complex c) {
    const double a = -f.plus.frequency(j, n);
    if (!(a > 0)) throw DomainError("L_harmonic: c^- support must satisfy n + kappa_j < 0");
    return c * std::pow(4.0 * kPi * a, 1.0 - k) * nonholomorphic_inner(psi, a, k, opt);
  });
  out.value += minus.value;
  out.error = out.error.cwiseMax(minus.error);
  return out;
}

LSeriesValue L_delta(const HarmonicMaassExpansion& f, const TestFunction& phi, const LSeriesOptions& opt) {
  const double k = f.weight.value();
  LSeriesValue base = L_harmonic(f, phi, opt);
  LSeriesValue out{(k / 2.0) * base.value, (std::abs(k) / 2.0) * base.error};
  const TestFunction phi2 = phi.power_weighted(2.0);
  LSeriesValue plus = zero_value(f.dim());
  accumulate(f.plus.coeffs, plus, opt, [&](int j, long long n, Complex c) {
    const double w = f.plus.frequency(j, n);
    if (w == 0.0) return Complex(0.0);
    return -2.0 * kPi * c * w * laplace(phi2, 2.0 * kPi * w, opt.specfun);
  });
  out.value += plus.value;
  out.error = out.error.cwiseMax(plus.error);
  if (f.has_minus()) {
    const TestFunction psi = phi.power_weighted(3.0 - k);
    LSeriesValue minus = zero_value(f.dim());
    accumulate(f.minus, minus, opt, [&](int j, long long n, Complex c) {
      const double w = f.plus.frequency(j, n);
      const double a = -w;
      if (!(a > 0)) throw DomainError("L_delta: c^- support must satisfy n + kappa_j < 0");
      return -2.0 * kPi * c * w * std::pow(4.0 * kPi * a, 1.0 - k) * nonholomorphic_inner(psi, a, k, opt);
    });
    out.value += minus.value;
    out.error = out.error.cwiseMax(minus.error);
  }
  return out;
}

VectorXc L_by_quadrature(const HarmonicMaassExpansion& f, const TestFunction& phi, bool delta,
                         const QuadratureSpec& quad) {
  auto g = [&](double y) -> VectorXc {
    const Complex p = phi(y);
    if (p == Complex(0.0)) return VectorXc::Zero(f.dim());
    const Complex tau(0.0, y);
    return (delta ? delta_k_evaluate(f, tau).value : evaluate_form(f, tau).value) * p;
  };
  if (auto sup = phi.support()) return integrate_finite(g, sup->first, sup->second, quad);
  return integrate_halfline(g, quad);
}

FEReport fe_residual(const HarmonicMaassExpansion& f, const FormContext& ctx, const TestFunction& phi, FEMode mode,
                     double threshold, const LSeriesOptions& opt) {
  check_compatible_dims(f, ctx);
  if (ctx.weight != f.weight) throw DomainError("fe_residual: context weight differs from the expansion weight");
  const TestFunction slashed = slash_testfn(phi, Rational(2) - ctx.weight, ctx.multiplier);
  auto L = [&](const TestFunction& p) { return mode == FEMode::Plain ? L_harmonic(f, p, opt) : L_delta(f, p, opt); };
  FEReport r;
  r.mode = mode;
  r.testfn_id = phi.id();
  r.threshold = threshold;
  r.lhs = L(phi);
  const LSeriesValue other = L(slashed);
  const Complex sign = mode == FEMode::Plain ? 1.0 : -1.0;
  const MatrixXc factor = sign * i_power(ctx.weight) * ctx.representation(GroupElement::S());
  r.rhs.value = factor * other.value;
  r.rhs.error = other.error;
  r.abs_residual = inf_norm(r.lhs.value - r.rhs.value);
  const double scale = std::max(inf_norm(r.lhs.value), inf_norm(r.rhs.value));
  r.residual = r.abs_residual == 0.0 ? 0.0 : r.abs_residual / scale;
  r.pass = r.residual <= threshold;
  return r;
}

LSeriesValue L_continued(const HarmonicMaassExpansion& f, const FormContext& ctx, const TestFunction& phi, Complex s,
                         const LSeriesOptions& opt) {
  check_compatible_dims(f, ctx);
  const long long n0 = std::max(ctx.n0, f.plus.n0);
  if (phi.family() == TestFamily::Kernel) throw MembershipError("L_continued: the power kernel does not decay");
  if (!phi.compact() && !(phi.decay_rate() > 2.0 * kPi * double(n0))) {
    throw MembershipError("L_continued: phi must decay faster than e^{-2 pi n0 x} at 0 and infinity (beta > 2 pi n0)");
  }
  const VectorXc first = tail_pairing(f, phi.power_weighted(s), opt);
  const TestFunction slashed = slash_testfn(phi, Rational(1) - ctx.weight, ctx.multiplier);
  const VectorXc second = tail_pairing(f, slashed.power_weighted(1.0 - s), opt);
  const MatrixXc factor = i_power(ctx.weight) * ctx.representation(GroupElement::S());
  return {first + factor * second, Eigen::VectorXd::Zero(f.dim())};
}

MellinReport mellin_roundtrip(const HarmonicMaassExpansion& f, const TestFunction& phi, double y,
                              const LineIntegralSpec& line, const LSeriesOptions& opt) {
  if (!(y > 0)) throw DomainError("mellin_roundtrip: y must be positive");
  auto G = [&](Complex s) -> VectorXc { return L_harmonic(f, phi.power_weighted(s), opt).value; };
  const auto li = integrate_vertical_line(G, y, line);
  MellinReport r;
  r.recovered = li.value;
  r.tail_proxy = li.tail_proxy;
  const Complex p = phi(y);
  r.direct = p == Complex(0.0) ? VectorXc::Zero(f.dim()) : VectorXc(evaluate_form(f, Complex(0, y)).value * p);
  r.error = inf_norm(r.recovered - r.direct);
  return r;
}

ConverseReport converse_check(const HarmonicMaassExpansion& f, const FormContext& ctx,
                              const std::vector<TestFunction>& family, double threshold, const LSeriesOptions& opt) {
  if (family.empty()) throw DomainError("converse_check: empty test-function family");
  ConverseReport rep;
  rep.threshold = threshold;
  const bool with_delta = f.has_minus();
  for (const auto& phi : family) {
    for (FEMode mode : {FEMode::Plain, FEMode::Delta}) {
      if (mode == FEMode::Delta && !with_delta) continue;
      FEReport r = fe_residual(f, ctx, phi, mode, threshold, opt);
      if (r.residual > rep.worst_residual || rep.worst_id.empty()) {
        rep.worst_residual = r.residual;
        rep.worst_id = r.testfn_id;
        rep.worst_mode = mode;
      }
      rep.reports.push_back(std::move(r));
    }
  }
  rep.consistent = rep.worst_residual <= threshold;
  return rep;
}

std::vector<TestFunction> covering_bumps(double lo, double hi, int count, int p) {
  if (!(lo > 0 && lo < hi) || count < 1) throw DomainError("covering_bumps: need 0 < lo < hi and count >= 1");
  const double ratio = std::pow(hi / lo, 1.0 / count);
  std::vector<TestFunction> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(TestFunction::poly_bump(lo * std::pow(ratio, i - 0.5), lo * std::pow(ratio, i + 1.5), p));
  }
  return out;
}

SummationSides summation_formula_sides(const FourierExpansion& f, const HarmonicMaassExpansion& g,
                                       const TestFunction& phi, int j, const Weight& k, const QuadratureSpec& quad) {
  if (!k.is_integer() || k.num() < 4 || k.num() % 2 != 0) throw DomainError("summation formula: k must be even and >= 4");
  if (g.weight != Rational(2) - k) throw DomainError("summation formula: g must have weight 2 - k");
  if (j < 0 || j >= g.dim() || f.dim() != g.dim()) throw DomainError("summation formula: component index out of range");
  const auto sup = phi.support();
  if (!sup) throw DomainError("summation formula: phi must be compactly supported");

  const FourierExpansion expected = shadow(g, k);
  for (int i = 0; i < f.dim(); ++i) {
    if (expected.kappa[i] != f.kappa[i]) throw DomainError("summation formula: shadow(g) has different exponents than f");
    CoefficientMap keys = expected.coeffs[i];
    for (const auto& [n, c] : f.coeffs[i]) keys[n] += 0.0;
    for (const auto& [n, unused] : keys) {
      (void)unused;
      const Complex want = expected.get(i, n), have = f.get(i, n);
      if (std::abs(want - have) > 1e-8 * std::max(1.0, std::abs(want))) {
        throw DomainError("summation formula: shadow(g) != f at component " + std::to_string(i + 1) +
                          ", n = " + std::to_string(n));
      }
    }
  }

  const int kk = static_cast<int>(k.num());
  const double lo = sup->first, hi = sup->second;
  auto integrate = [&](auto&& h) { return integrate_finite(h, lo, hi, quad); };
  SummationSides out;
  const double kap = g.kappa()[j].value();
  for (const auto& [n, c] : g.plus.coeffs[j]) {
    const double w = double(n) + kap;
    out.lhs += c * integrate([&](double y) {
      const Complex twist = std::pow(Complex(0.0, -y), kk - 2);
      return phi(y) * (std::exp(-2.0 * kPi * w * y) - twist * std::exp(-2.0 * kPi * w / y));
    });
  }
  double factorial_km2 = 1.0;
  for (int i = 2; i <= kk - 2; ++i) factorial_km2 *= i;
  for (const auto& [n, a] : f.coeffs[j]) {
    const double d = f.frequency(j, n);
    const Complex ca = std::conj(a);
    double l_factorial = 1.0;
    for (int l = 0; l <= kk - 2; ++l) {
      if (l > 0) l_factorial *= l;
      const Complex first = integrate([&](double y) { return std::exp(-2.0 * kPi * d * y) * std::pow(y, l) * phi(y); });
      const double kappa_w = 1.0 - kk / 2.0 + l, mu = (kk - 1) / 2.0;
      const Complex second = integrate([&](double y) {
        return std::exp(-kPi * d * y) * std::pow(y, kk / 2.0 - 1.0) * phi(y) *
               whittaker_m(kappa_w, mu, 2.0 * kPi * d * y);
      });
      out.rhs += ca * (factorial_km2 / l_factorial * std::pow(4.0 * kPi * d, 1.0 - kk + l) * first +
                       std::pow(2.0, l + 1) / (kk - 1.0) * std::pow(8.0 * kPi * d, -kk / 2.0) * second);
    }
  }
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

PhiTransformSides phi_transform_sides(int k, double d, const TestFunction& phi, const QuadratureSpec& quad) {
  if (k < 2) throw DomainError("phi_transform_sides: k must be >= 2");
  if (!(d > 0)) throw DomainError("phi_transform_sides: d must be positive");
  const auto sup = phi.support();
  if (!sup) throw DomainError("phi_transform_sides: phi must be compactly supported");
  auto integrate = [&](auto&& h) { return integrate_finite(h, sup->first, sup->second, quad); };
  PhiTransformSides out;
  const double x = 4.0 * kPi * d;
  out.lhs = std::pow(x, 1.0 - k) * integrate([&](double y) {
              return upper_incomplete_gamma_scaled(k - 1.0, x * y) * std::exp(-2.0 * kPi * d * y) * phi(y);
            });
  double factorial_km2 = 1.0;
  for (int i = 2; i <= k - 2; ++i) factorial_km2 *= i;
  double l_factorial = 1.0;
  for (int l = 0; l <= k - 2; ++l) {
    if (l > 0) l_factorial *= l;
    out.rhs += factorial_km2 / l_factorial * std::pow(x, 1.0 - k + l) *
               integrate([&](double y) { return std::exp(-2.0 * kPi * d * y) * std::pow(y, l) * phi(y); });
  }
  out.residual = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.lhs), std::abs(out.rhs));
  return out;
}

}  // namespace vvl
