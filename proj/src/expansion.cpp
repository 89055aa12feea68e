#include "vvl/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "vvl/specfun.hpp"

namespace vvl {

FourierExpansion::FourierExpansion(std::vector<Rational> kappa_) : kappa(std::move(kappa_)), coeffs(kappa.size()) {
  if (kappa.empty()) throw DomainError("FourierExpansion: dimension must be positive");
}

FourierExpansion FourierExpansion::scalar(Rational kappa) { return FourierExpansion({kappa}); }

void FourierExpansion::set(int j, long long n, Complex c) {
  if (j < 0 || j >= dim()) throw DomainError("FourierExpansion: component index out of range");
  if (c == Complex(0.0)) {
    coeffs[j].erase(n);
  } else {
    coeffs[j][n] = c;
  }
}

Complex FourierExpansion::get(int j, long long n) const {
  if (j < 0 || j >= dim()) throw DomainError("FourierExpansion: component index out of range");
  const auto it = coeffs[j].find(n);
  return it == coeffs[j].end() ? Complex(0.0) : it->second;
}

bool FourierExpansion::empty() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const CoefficientMap& m) { return m.empty(); });
}

long long FourierExpansion::max_index() const {
  long long best = 0;
  for (const auto& m : coeffs) {
    if (!m.empty()) best = std::max(best, m.rbegin()->first);
  }
  return best;
}

long long FourierExpansion::minimal_n0() const {
  long long n0_needed = 0;
  for (int j = 0; j < dim(); ++j) {
    for (const auto& [n, c] : coeffs[j]) {
      const Rational w = Rational(n) + kappa[j];
      if (w < Rational(0)) n0_needed = std::max(n0_needed, (-w).floor() + ((-w).is_integer() ? 0 : 1));
    }
  }
  return n0_needed;
}

void FourierExpansion::validate() const {
  if (kappa.empty() || coeffs.size() != kappa.size()) throw InputError("expansion: kappa and coefficient sizes differ");
  for (const auto& k : kappa) {
    if (k < Rational(0) || k >= Rational(1)) throw InputError("expansion: kappa must lie in [0,1), got " + k.str());
  }
  if (n0 < 0) throw InputError("expansion: n0 must be nonnegative");
  if (minimal_n0() > n0) {
    throw InputError("expansion: declared n0 = " + std::to_string(n0) + " is smaller than the support requires (" +
                     std::to_string(minimal_n0()) + ")");
  }
  for (const auto& m : coeffs) {
    for (const auto& [n, c] : m) {
      if (!is_finite(c)) throw InputError("expansion: non-finite coefficient at n = " + std::to_string(n));
    }
  }
}

HarmonicMaassExpansion::HarmonicMaassExpansion(Weight k, FourierExpansion holomorphic)
    : weight(k), plus(std::move(holomorphic)), minus(plus.dim()) {
  validate_weight(k);
}

void HarmonicMaassExpansion::set_minus(int j, long long n, Complex c) {
  if (j < 0 || j >= dim()) throw DomainError("HarmonicMaassExpansion: component index out of range");
  if (c == Complex(0.0)) {
    minus[j].erase(n);
  } else {
    minus[j][n] = c;
  }
}

bool HarmonicMaassExpansion::has_minus() const {
  return std::any_of(minus.begin(), minus.end(), [](const CoefficientMap& m) { return !m.empty(); });
}

void HarmonicMaassExpansion::validate() const {
  validate_weight(weight);
  plus.validate();
  if (minus.size() != plus.coeffs.size()) throw InputError("expansion: c^- has the wrong number of components");
  for (int j = 0; j < dim(); ++j) {
    for (const auto& [n, c] : minus[j]) {
      if (Rational(n) + plus.kappa[j] >= Rational(0)) {
        throw InputError("expansion: c^- support must satisfy n + kappa_j < 0 (component " + std::to_string(j + 1) +
                         ", n = " + std::to_string(n) + ")");
      }
      if (!is_finite(c)) throw InputError("expansion: non-finite c^- coefficient");
    }
  }
}

namespace {

// Gamma(1-k, 4 pi a v) e^{2 pi a v} for a = |n + kappa| > 0, without overflow.
double nonholomorphic_factor(double one_minus_k, double a, double v) {
  const double x = 4.0 * kPi * a * v;
  return upper_incomplete_gamma_scaled(one_minus_k, x) * std::exp(-2.0 * kPi * a * v);
}

// Sum over n > N of e^{C sqrt n} e^{-2 pi (n + kappa_min) v}.
double holomorphic_tail(double C, double kappa_min, double v, long long N) {
  double sum = 0.0;
  double prev = HUGE_VAL;
  for (long long n = std::max<long long>(N + 1, 1); n < N + 200000; ++n) {
    const double term = std::exp(C * std::sqrt(double(n)) - 2.0 * kPi * (double(n) + kappa_min) * v);
    sum += term;
    if (term < 1e-18 * sum && term < prev) break;
    if (term == 0.0 && prev == 0.0) break;
    prev = term;
  }
  return sum;
}

// Sum over n > N of n^{k/2} Gamma(1-k, 4 pi n v) e^{2 pi n v}.
double nonholomorphic_tail(double k, double v, long long N) {
  double sum = 0.0;
  for (long long n = std::max<long long>(N + 1, 1); n < N + 200000; ++n) {
    const double term = std::pow(double(n), k / 2.0) * nonholomorphic_factor(1.0 - k, double(n), v);
    sum += term;
    if (term < 1e-18 * sum || term == 0.0) break;
  }
  return sum;
}

struct TermSums {
  VectorXc value;
  VectorXc u_derivative;
};

TermSums sum_terms(const HarmonicMaassExpansion& f, Complex tau, long long N, bool with_derivative) {
  const double u = tau.real(), v = tau.imag();
  const double one_minus_k = 1.0 - f.weight.value();
  TermSums out{VectorXc::Zero(f.dim()), VectorXc::Zero(f.dim())};
  for (int j = 0; j < f.dim(); ++j) {
    const double kap = f.plus.kappa[j].value();
    for (const auto& [n, c] : f.plus.coeffs[j]) {
      if (n > N) break;
      const double w = double(n) + kap;
      const Complex term = c * std::exp(2.0 * kPi * kI * w * tau);
      out.value(j) += term;
      if (with_derivative) out.u_derivative(j) += 2.0 * kPi * kI * w * term;
    }
    for (const auto& [n, c] : f.minus[j]) {
      if (n < -N) continue;
      const double w = double(n) + kap;
      const Complex term = c * nonholomorphic_factor(one_minus_k, -w, v) * e2pi(w * u);
      out.value(j) += term;
      if (with_derivative) out.u_derivative(j) += 2.0 * kPi * kI * w * term;
    }
  }
  return out;
}

FormValue finish(const HarmonicMaassExpansion& f, Complex tau, VectorXc value, const EvalOptions& opt, long long N,
                 double tail_scale) {
  const double v = tau.imag();
  double tail = 0.0;
  if (!f.plus.empty()) {
    double kappa_min = 1.0;
    for (const auto& k : f.plus.kappa) kappa_min = std::min(kappa_min, k.value());
    tail += holomorphic_tail(f.plus.growth_C, kappa_min, v, N);
  }
  if (f.has_minus()) tail += nonholomorphic_tail(f.weight.value(), v, N);
  tail *= tail_scale;
  FormValue out;
  const double mag = value.size() ? value.cwiseAbs().maxCoeff() : 0.0;
  out.value = std::move(value);
  out.tail_bound = tail;
  out.truncation_ok = tail <= opt.tol * std::max(1.0, mag);
  return out;
}

long long truncation_of(const HarmonicMaassExpansion& f, const EvalOptions& opt) {
  if (opt.truncation) {
    if (*opt.truncation < 0) throw DomainError("truncation must be nonnegative");
    return *opt.truncation;
  }
  long long N = f.plus.max_index();
  for (const auto& m : f.minus) {
    if (!m.empty()) N = std::max(N, -m.begin()->first);
  }
  return N;
}

}  // namespace

FormValue evaluate_form(const HarmonicMaassExpansion& f, Complex tau, const EvalOptions& opt) {
  if (!(tau.imag() > 0)) throw DomainError("evaluate_form: Im(tau) must be positive");
  const long long N = truncation_of(f, opt);
  auto sums = sum_terms(f, tau, N, false);
  return finish(f, tau, std::move(sums.value), opt, N, 1.0);
}

FormValue evaluate_form(const FourierExpansion& f, Complex tau, const EvalOptions& opt) {
  return evaluate_form(HarmonicMaassExpansion(Weight(0), f), tau, opt);
}

FormValue delta_k_evaluate(const HarmonicMaassExpansion& f, Complex tau, const EvalOptions& opt) {
  if (!(tau.imag() > 0)) throw DomainError("delta_k_evaluate: Im(tau) must be positive");
  const long long N = truncation_of(f, opt);
  auto sums = sum_terms(f, tau, N, true);
  VectorXc value = tau * sums.u_derivative + (f.weight.value() / 2.0) * sums.value;
  // The derivative weights each omitted term by at most 2 pi |tau| (N + 1).
  return finish(f, tau, std::move(value), opt, N, 2.0 * kPi * std::abs(tau) * double(N + 2) + 1.0);
}

FourierExpansion shadow(const HarmonicMaassExpansion& g, const Weight& k) {
  validate_weight(k);
  if (g.weight != Rational(2) - k) {
    throw DomainError("shadow: g must have weight 2 - k = " + (Rational(2) - k).str() + ", got " + g.weight.str());
  }
  std::vector<Rational> kappa;
  for (const auto& kap : g.kappa()) kappa.push_back((-kap).frac());
  FourierExpansion f(kappa);
  for (int j = 0; j < g.dim(); ++j) {
    const Rational kap = g.kappa()[j];
    const long long shift = kap == Rational(0) ? 0 : 1;
    for (const auto& [n, c] : g.minus[j]) {
      const Rational d = Rational(n) - kap;
      if (d <= Rational(0)) {
        throw DomainError("shadow: c^- keys must satisfy n - kappa_j > 0 (component " + std::to_string(j + 1) +
                          ", n = " + std::to_string(n) + ")");
      }
      const double x = 4.0 * kPi * d.value();
      f.set(j, n - shift, -std::conj(c) * std::pow(x, k.value() - 1.0));
    }
  }
  f.n0 = 0;
  return f;
}

std::vector<Complex> default_slash_samples() { return {Complex(0, 1), Complex(0, 2), Complex(1, 1)}; }

double slash_residual(const HarmonicMaassExpansion& f, const FormContext& ctx, const GroupElement& gamma,
                      const std::vector<Complex>& samples, const EvalOptions& opt) {
  if (ctx.representation.dim != f.dim()) throw DomainError("slash_residual: representation dimension mismatch");
  const Word w = decompose_word(gamma);
  const Complex chi_inv = std::conj(ctx.multiplier.eval(w));
  const MatrixXc rho_inv = ctx.representation.eval(w).adjoint();
  const double k = ctx.weight.value();
  double worst = 0.0;
  for (const Complex tau : samples) {
    const VectorXc direct = evaluate_form(f, tau, opt).value;
    const Complex factor = std::exp(-k * std::log(gamma.j(tau))) * chi_inv;
    const VectorXc slashed = factor * (rho_inv * evaluate_form(f, gamma.act(tau), opt).value);
    const double diff = (slashed - direct).cwiseAbs().maxCoeff();
    const double scale = std::max(direct.cwiseAbs().maxCoeff(), slashed.cwiseAbs().maxCoeff());
    if (diff > 0) worst = std::max(worst, diff / scale);
  }
  return worst;
}

double laplacian_residual(const HarmonicMaassExpansion& f, Complex tau, double h) {
  if (!(h > 0) || !(tau.imag() > 2 * h)) throw DomainError("laplacian_residual: need 0 < 2h < Im(tau)");
  auto F = [&](double du, double dv) { return evaluate_form(f, tau + Complex(du, dv)).value; };
  const VectorXc f0 = F(0, 0);
  const VectorXc up1 = F(h, 0), um1 = F(-h, 0), up2 = F(2 * h, 0), um2 = F(-2 * h, 0);
  const VectorXc vp1 = F(0, h), vm1 = F(0, -h), vp2 = F(0, 2 * h), vm2 = F(0, -2 * h);
  const VectorXc fu = (8.0 * (up1 - um1) - (up2 - um2)) / (12.0 * h);
  const VectorXc fv = (8.0 * (vp1 - vm1) - (vp2 - vm2)) / (12.0 * h);
  const VectorXc fuu = (16.0 * (up1 + um1) - (up2 + um2) - 30.0 * f0) / (12.0 * h * h);
  const VectorXc fvv = (16.0 * (vp1 + vm1) - (vp2 + vm2) - 30.0 * f0) / (12.0 * h * h);
  const double v = tau.imag(), k = f.weight.value();
  const VectorXc lap = -v * v * (fuu + fvv) + kI * k * v * (fu + kI * fv);
  const double scale = f0.cwiseAbs().maxCoeff();
  return scale == 0.0 ? lap.cwiseAbs().maxCoeff() : lap.cwiseAbs().maxCoeff() / scale;
}

HarmonicMaassExpansion single_term(const Weight& k, const Rational& kappa, long long n, Complex c, bool holomorphic) {
  HarmonicMaassExpansion f(k, FourierExpansion::scalar(kappa));
  if (holomorphic) {
    f.plus.set(0, n, c);
    f.plus.n0 = f.plus.minimal_n0();
  } else {
    f.set_minus(0, n, c);
  }
  return f;
}

}  // namespace vvl
