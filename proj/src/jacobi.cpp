#include "vvl/jacobi.hpp"

#include <cmath>
#include <limits>

#include "vvl/specfun.hpp"

namespace vvl {

namespace {

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

// Theta index j in 1..2m of r.
long long theta_index(long long r, int m) {
  const long long rho = mod(r, 2LL * m);
  return rho == 0 ? 2LL * m : rho;
}

// Class of (l, r): discriminant D and theta index j.
using ClassKey = std::pair<long long, long long>;

std::map<ClassKey, Complex> classes_of(const JacobiCoefficientMap& entries, const JacobiExpansion& F,
                                       const char* which) {
  std::map<ClassKey, Complex> out;
  for (const auto& [key, c] : entries) {
    const ClassKey cls{F.discriminant(key.first, key.second), theta_index(key.second, F.index)};
    auto [it, inserted] = out.emplace(cls, c);
    if (!inserted && it->second != c) {
      throw InputError(std::string("jacobi: ") + which + " coefficients at (l, r) = (" + std::to_string(key.first) +
                       ", " + std::to_string(key.second) + ") disagree with another entry of class D = " +
                       std::to_string(cls.first) + ", r mod " + std::to_string(2 * F.index) + " = " +
                       std::to_string(mod(key.second, 2LL * F.index)));
    }
  }
  return out;
}

// Frequency index N with D / 4m = N + kappa_j.
long long component_index(long long D, long long j, int m) {
  const long long fm = 4LL * m;
  return (D - mod(-j * j, fm)) / fm;
}

// Sums term(r) over r = j0 + 2m t, starting at the magnitude peak and walking
// outward in both directions until log|term| falls 45 below the running maximum
// (a relative 1e-20). log_mag(r) must be concave in r.
template <class LogMag, class Term>
JacobiValue sum_over_residue_class(long long j0, int m, double peak, LogMag&& log_mag, Term&& term) {
  const long long step = 2LL * m;
  const long long t0 = static_cast<long long>(std::llround((peak - double(j0)) / double(step)));
  JacobiValue out;
  double best = -std::numeric_limits<double>::infinity();
  double last = -std::numeric_limits<double>::infinity();
  for (int dir : {0, 1}) {
    long long t = dir == 0 ? t0 : t0 - 1;
    for (int guard = 0; guard < 1000000; ++guard, t += (dir == 0 ? 1 : -1)) {
      const long long r = j0 + step * t;
      const double lm = log_mag(r);
      best = std::max(best, lm);
      if (lm < best - 45.0 && (dir == 0 ? double(r) > peak : double(r) < peak)) {
        last = std::max(last, lm);
        break;
      }
      out.value += term(r);
    }
  }
  out.tail_bound = std::isfinite(last) ? 2.0 * std::exp(last) : 0.0;
  return out;
}

}  // namespace

void JacobiExpansion::set_plus(long long l, long long r, Complex c) {
  if (c == Complex(0.0)) {
    plus.erase({l, r});
    return;
  }
  plus[{l, r}] = c;
}

void JacobiExpansion::set_minus(long long l, long long r, Complex c) {
  if (discriminant(l, r) >= 0) {
    throw InputError("jacobi: c^- requires 4ml - r^2 < 0, got (l, r) = (" + std::to_string(l) + ", " +
                     std::to_string(r) + ")");
  }
  if (c == Complex(0.0)) {
    minus.erase({l, r});
    return;
  }
  minus[{l, r}] = c;
}

bool JacobiExpansion::has_minus() const { return !minus.empty(); }

void JacobiExpansion::validate() const {
  if (weight <= 0 || weight % 2 != 0) throw DomainError("jacobi: weight must be a positive even integer");
  if (index < 1) throw DomainError("jacobi: index must be >= 1");
  for (const auto& [key, c] : plus) {
    if (!is_finite(c)) throw InputError("jacobi: non-finite c^+ coefficient");
  }
  for (const auto& [key, c] : minus) {
    if (discriminant(key.first, key.second) >= 0) throw InputError("jacobi: c^- requires 4ml - r^2 < 0");
    if (!is_finite(c)) throw InputError("jacobi: non-finite c^- coefficient");
  }
  classes_of(plus, *this, "c^+");
  classes_of(minus, *this, "c^-");
}

Rational theta_kappa(int m, long long j) {
  if (m < 1) throw DomainError("theta: index must be >= 1");
  return Rational(mod(-j * j, 4LL * m), 4LL * m);
}

JacobiValue theta_series(int m, long long j, Complex tau, Complex z, std::optional<long long> truncation) {
  if (m < 1) throw DomainError("theta_series: index must be >= 1");
  const double v = tau.imag(), y = z.imag();
  if (!(v > 0)) throw DomainError("theta_series: requires Im tau > 0");
  const long long j0 = mod(j, 2LL * m);
  const double fm = 4.0 * m;
  auto log_mag = [&](long long r) { return -2.0 * kPi * (double(r) * double(r) * v / fm + double(r) * y); };
  auto term = [&](long long r) {
    const double rr = double(r);
    return std::exp(kI * (2.0 * kPi) * (rr * rr * tau / fm + rr * z));
  };
  if (!truncation) return sum_over_residue_class(j0, m, -2.0 * m * y / v, log_mag, term);

  const long long T = *truncation;
  if (T < 0) throw DomainError("theta_series: truncation must be >= 0");
  JacobiValue out;
  for (long long t = -T; t <= T; ++t) out.value += term(j0 + 2LL * m * t);
  // Everything outside the window, summed until negligible.
  double tail = 0.0;
  for (int side : {-1, 1}) {
    double best = -std::numeric_limits<double>::infinity();
    for (long long t = side * (T + 1);; t += side) {
      const double lm = log_mag(j0 + 2LL * m * t);
      best = std::max(best, lm);
      if (lm < best - 45.0) break;
      tail += std::exp(lm);
    }
  }
  out.tail_bound = tail;
  out.truncation_ok = tail <= 1e-12 * std::max(1.0, std::abs(out.value));
  return out;
}

HarmonicMaassExpansion theta_decompose(const JacobiExpansion& F) {
  F.validate();
  const int m = F.index;
  std::vector<Rational> kappa;
  for (long long j = 1; j <= 2LL * m; ++j) kappa.push_back(theta_kappa(m, j));
  FourierExpansion plus(kappa);
  plus.growth_C = F.growth_C;
  for (const auto& [cls, c] : classes_of(F.plus, F, "c^+")) {
    plus.set(int(cls.second - 1), component_index(cls.first, cls.second, m), c);
  }
  plus.n0 = plus.minimal_n0();
  HarmonicMaassExpansion out(Weight(2 * F.weight - 1, 2), plus);
  for (const auto& [cls, c] : classes_of(F.minus, F, "c^-")) {
    out.set_minus(int(cls.second - 1), component_index(cls.first, cls.second, m), c);
  }
  return out;
}

JacobiValue theta_reconstruct(const HarmonicMaassExpansion& components, int m, Complex tau, Complex z,
                              std::optional<long long> truncation) {
  if (components.dim() != 2 * m) throw DomainError("theta_reconstruct: need 2m components");
  const FormValue fv = evaluate_form(components, tau);
  JacobiValue out;
  out.truncation_ok = fv.truncation_ok;
  for (int j = 1; j <= 2 * m; ++j) {
    const JacobiValue th = theta_series(m, j, tau, z, truncation);
    out.value += fv.value(j - 1) * th.value;
    out.tail_bound += std::abs(fv.value(j - 1)) * th.tail_bound + fv.tail_bound * std::abs(th.value);
    out.truncation_ok = out.truncation_ok && th.truncation_ok;
  }
  return out;
}

namespace {

// Shared double sum over classes and their r = j mod 2m representatives.
// per_term(c, D, l, r, g_e, dg_e) receives g(v) E and g'(v) E for the term
// E = e^{2 pi i (l tau + r z)}, g = 1 on c^+ and Gamma(3/2 - k, pi |D| v / m) on c^-.
template <class PerTerm>
JacobiValue jacobi_double_sum(const JacobiExpansion& F, Complex tau, Complex z, PerTerm&& per_term) {
  F.validate();
  const double v = tau.imag(), y = z.imag();
  if (!(v > 0)) throw DomainError("jacobi: requires Im tau > 0");
  const int m = F.index;
  const double a = 1.5 - F.weight;
  JacobiValue out;
  for (int part = 0; part < 2; ++part) {
    const bool nonholo = part == 1;
    for (const auto& [cls, c] : classes_of(nonholo ? F.minus : F.plus, F, nonholo ? "c^-" : "c^+")) {
      const long long D = cls.first;
      const double beta = nonholo ? kPi * double(-D) / m : 0.0;
      const double gs = nonholo ? upper_incomplete_gamma_scaled(a, beta * v) : 1.0;
      const double dg = nonholo ? -beta * std::pow(beta * v, a - 1.0) : 0.0;
      auto log_mag = [&](long long r) {
        const double l = double((D + r * r) / (4LL * m));
        return -beta * v - 2.0 * kPi * (l * v + double(r) * y);
      };
      auto term = [&](long long r) {
        const long long l = (D + r * r) / (4LL * m);
        const Complex e = std::exp(-beta * v + kI * (2.0 * kPi) * (double(l) * tau + double(r) * z));
        return per_term(c, D, l, r, gs * e, dg * e);
      };
      const JacobiValue part_sum = sum_over_residue_class(cls.second, m, -2.0 * m * y / v, log_mag, term);
      out.value += part_sum.value;
      out.tail_bound += std::abs(c) * part_sum.tail_bound;
    }
  }
  out.truncation_ok = out.tail_bound <= 1e-12 * std::max(1.0, std::abs(out.value));
  return out;
}

}  // namespace

JacobiValue jacobi_evaluate(const JacobiExpansion& F, Complex tau, Complex z) {
  return jacobi_double_sum(F, tau, z,
                           [](Complex c, long long, long long, long long, Complex g_e, Complex) { return c * g_e; });
}

FormContext jacobi_context(int k, int m, long long n0) {
  return FormContext{Weight(2 * k - 1, 2), MultiplierSystem::eta(-1), Representation::weil(m, true, true), n0};
}

JacobiExpansion heat_operator(const JacobiExpansion& F) {
  F.validate();
  if (F.has_minus()) throw DomainError("heat_operator: holomorphic input only");
  JacobiExpansion out(F.weight, F.index);
  out.growth_C = F.growth_C;
  for (const auto& [key, c] : F.plus) out.set_plus(key.first, key.second, double(F.discriminant(key.first, key.second)) * c);
  return out;
}

JacobiValue alpha_k_evaluate(const JacobiExpansion& F, Complex tau, Complex z) {
  const int m = F.index;
  const double half_weight = (2.0 * F.weight - 1.0) / 4.0;
  return jacobi_double_sum(F, tau, z, [&](Complex c, long long, long long l, long long r, Complex g_e, Complex dg_e) {
    // d/dtau-bar of g(v) E is (i/2) g'(v) E; d/dtau is (-i/2) g' E + 2 pi i l g E.
    const Complex d_bar = 0.5 * kI * dg_e;
    const Complex d_tau = -0.5 * kI * dg_e + 2.0 * kPi * kI * double(l) * g_e;
    const Complex d_zz = std::pow(2.0 * kPi * kI * double(r), 2) * g_e;
    const Complex heat = (2.0 * m / (kPi * kI)) * d_tau - d_zz / std::pow(2.0 * kPi * kI, 2);
    return c * (tau * (d_bar + (kPi * kI / (2.0 * m)) * heat) + half_weight * g_e);
  });
}

LSeriesValue jacobi_L(const JacobiExpansion& F, const TestFunction& phi, const LSeriesOptions& opt) {
  return L_harmonic(theta_decompose(F), phi, opt);
}

LSeriesValue jacobi_alpha_L(const JacobiExpansion& F, const TestFunction& phi, const LSeriesOptions& opt) {
  return L_delta(theta_decompose(F), phi, opt);
}

FEReport jacobi_fe_residual(const JacobiExpansion& F, const TestFunction& phi, FEMode mode, double threshold,
                            const LSeriesOptions& opt) {
  const HarmonicMaassExpansion comps = theta_decompose(F);
  return fe_residual(comps, jacobi_context(F.weight, F.index, comps.plus.n0), phi, mode, threshold, opt);
}

Complex partial_L(const JacobiExpansion& F, int j, Complex s, bool finite) {
  F.validate();
  const int m = F.index;
  if (j < 1 || j > 2 * m) throw DomainError("partial_L: j must lie in 1..2m");
  if (F.has_minus()) throw DomainError("partial_L: requires cusp data (no c^-)");
  if (!finite && !(s.real() > (F.weight - 0.5) / 2.0 + 1.0)) {
    throw DomainError("partial_L: Re(s) must exceed (k - 1/2)/2 + 1 for absolute convergence");
  }
  Complex sum = 0.0;
  for (const auto& [cls, c] : classes_of(F.plus, F, "c^+")) {
    if (cls.first <= 0) throw DomainError("partial_L: requires cusp data (4ml - r^2 > 0)");
    if (cls.second != j) continue;
    sum += c * std::exp(-s * std::log(double(cls.first) / (4.0 * m)));
  }
  return sum;
}

HarmonicMaassExpansion kohnen_map(const JacobiExpansion& F) {
  if (F.index != 1) throw DomainError("kohnen_map: index must be 1");
  return kohnen_map(theta_decompose(F));
}

HarmonicMaassExpansion kohnen_map(const HarmonicMaassExpansion& components) {
  if (components.dim() != 2 || components.kappa()[0] != Rational(3, 4) || components.kappa()[1] != Rational(0)) {
    throw DomainError("kohnen_map: expects the index-1 component vector (kappa = 3/4, 0)");
  }
  FourierExpansion plus = FourierExpansion::scalar();
  plus.growth_C = components.plus.growth_C;
  // F_j(4 tau) has e^{2 pi i 4 (N + kappa_j) tau}: index n = 4N + 4 kappa_j.
  const long long shift[2] = {3, 0};
  for (int j = 0; j < 2; ++j) {
    for (const auto& [N, c] : components.plus.coeffs[j]) plus.set(0, 4 * N + shift[j], plus.get(0, 4 * N + shift[j]) + c);
  }
  plus.n0 = plus.minimal_n0();
  HarmonicMaassExpansion out(components.weight, plus);
  for (int j = 0; j < 2; ++j) {
    for (const auto& [N, c] : components.minus[j]) out.set_minus(0, 4 * N + shift[j], c);
  }
  return out;
}

namespace {

void require_plus_scalar(const HarmonicMaassExpansion& f, const char* who) {
  if (f.dim() != 1 || f.kappa()[0] != Rational(0)) {
    throw DomainError(std::string(who) + ": expects a scalar expansion with kappa = 0");
  }
}

// Component (0-based) for plus-space index n: n = 3 mod 4 -> j = 1, n = 0 mod 4 -> j = 2.
int plus_component(long long n, const char* who) {
  const long long r = mod(n, 4);
  if (r == 3) return 0;
  if (r == 0) return 1;
  throw InputError(std::string(who) + ": coefficient at n = " + std::to_string(n) +
                   " violates the plus-space support n = 0, 3 mod 4");
}

}  // namespace

HarmonicMaassExpansion plus_split(const HarmonicMaassExpansion& f) {
  require_plus_scalar(f, "plus_split");
  FourierExpansion plus({Rational(3, 4), Rational(0)});
  plus.growth_C = f.plus.growth_C;
  for (const auto& [n, c] : f.plus.coeffs[0]) {
    const int j = plus_component(n, "plus_split");
    plus.set(j, j == 0 ? (n - 3) / 4 : n / 4, c);
  }
  plus.n0 = plus.minimal_n0();
  HarmonicMaassExpansion out(f.weight, plus);
  for (const auto& [n, c] : f.minus[0]) {
    const int j = plus_component(n, "plus_split");
    out.set_minus(j, j == 0 ? (n - 3) / 4 : n / 4, c);
  }
  return out;
}

Complex plus_partial_L(const HarmonicMaassExpansion& f, int j, Complex s, bool finite) {
  require_plus_scalar(f, "plus_partial_L");
  if (j < 1 || j > 2) throw DomainError("plus_partial_L: j must be 1 or 2");
  if (f.has_minus()) throw DomainError("plus_partial_L: requires cusp data (no c^-)");
  if (!finite && !(s.real() > f.weight.value() / 2.0 + 1.0)) {
    throw DomainError("plus_partial_L: Re(s) must exceed k/2 + 1 for absolute convergence");
  }
  Complex sum = 0.0;
  for (const auto& [n, c] : f.plus.coeffs[0]) {
    if (n <= 0) throw DomainError("plus_partial_L: requires cusp data (n > 0)");
    if (plus_component(n, "plus_partial_L") != j - 1) continue;
    sum += c * std::exp(-s * std::log(double(n)));
  }
  return sum;
}

FEReport plus_fe_residual(const HarmonicMaassExpansion& f, const TestFunction& phi, FEMode mode, double threshold,
                          const LSeriesOptions& opt) {
  const Rational k = f.weight + Rational(1, 2);
  if (!k.is_integer() || k.num() <= 0 || k.num() % 2 != 0) {
    throw DomainError("plus_fe_residual: weight must be k - 1/2 with k a positive even integer");
  }
  const HarmonicMaassExpansion comps = plus_split(f);
  return fe_residual(comps, jacobi_context(int(k.num()), 1, comps.plus.n0), phi, mode, threshold, opt);
}

}  // namespace vvl
