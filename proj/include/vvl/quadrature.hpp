#pragma once

// Adaptive integration on finite intervals, half-lines and truncated
// vertical lines. The routines are templated on the integrand's value type,
// which may be a scalar (Complex) or a dense vector (VectorXc).

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "vvl/types.hpp"

namespace vvl {

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_subdivisions = 4000;
  /// Known exponential decay rate beta of the integrand, |g(t)| ~ e^{-beta t}.
  /// Zero means "unknown"; the half-line routine then relies on panel sizes alone.
  double halfline_decay_hint = 0.0;
  /// Measure the relative tolerance against int |g| instead of |int g|.
  /// Needed for oscillatory integrands whose integral cancels far below |g|.
  bool l1_scale = false;

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 8) throw DomainError("max_subdivisions must be >= 8");
    if (!(halfline_decay_hint >= 0)) throw DomainError("halfline_decay_hint must be >= 0");
  }

  QuadratureSpec with_decay(double beta) const {
    QuadratureSpec s = *this;
    s.halfline_decay_hint = beta;
    return s;
  }
};

struct LineIntegralSpec {
  double c = 1.0;
  double t_max = 200.0;
  int n_points = 4096;

  void validate() const {
    if (!(t_max > 0)) throw DomainError("t_max must be positive");
    if (n_points < 64) throw DomainError("n_points must be >= 64");
  }
};

namespace detail {

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const VectorXc& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline Complex first_component(const Complex& z) { return z; }
inline Complex first_component(const VectorXc& v) { return v.size() == 0 ? Complex{} : v(0); }

// Gauss-Kronrod 7/15 abscissae and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
  double a, b;
  V value;
  double error;
  double l1;  ///< Kronrod estimate of int |g| over the panel
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
auto gk15(F& g, double a, double b) {
  using V = std::decay_t<decltype(g(a))>;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  V fc = g(centre);
  V kronrod = fc * kWgk[7];
  V gauss = fc * kWg[3];
  double l1 = magnitude(fc) * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    V lo = g(centre - dx), hi = g(centre + dx);
    l1 += (magnitude(lo) + magnitude(hi)) * kWgk[i];
    V sum = lo + hi;
    kronrod += sum * kWgk[i];
    if (i % 2 == 1) gauss += sum * kWg[i / 2];
  }
  V k = kronrod * half;
  V gs = gauss * half;
  double err = magnitude(V(k - gs));
  return Panel<V>{a, b, k, err, l1 * std::abs(half)};
}

}  // namespace detail

/// Integral of g over [a, b] by globally adaptive Gauss-Kronrod bisection.
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
/// Throws ConvergenceError (with the best estimate) after max_subdivisions.
template <class F>
auto integrate_finite(F&& g, double a, double b, const QuadratureSpec& spec = {}) {
  using V = std::decay_t<decltype(g(a))>;
  if (!(a < b)) {
    if (a == b) return V(g(a) * 0.0);
    throw DomainError("integrate_finite: requires a < b");
  }
  std::priority_queue<detail::Panel<V>> queue;
  auto first = detail::gk15(g, a, b);
  V total = first.value;
  double total_err = first.error;
  double total_l1 = first.l1;
  queue.push(first);
  int subdivisions = 0;
  while (!queue.empty()) {
    const double scale = spec.l1_scale ? total_l1 : detail::magnitude(total);
    const double target = std::max(spec.abs_tol, spec.rel_tol * scale);
    if (total_err <= target) break;
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError("integrate_finite: subdivision limit reached",
                             detail::first_component(total), total_err);
    }
    auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-14 * std::max(1.0, std::abs(mid))) {
      // Too narrow to split: accept this panel's error as is.
      total_err -= worst.error;
      continue;
    }
    auto left = detail::gk15(g, worst.a, mid);
    auto right = detail::gk15(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
  }
  return total;
}

/// Integral of g over [a, infinity), a >= 0, by adaptive panels whose widths
/// double outward. Terminates once three consecutive panels contribute less
/// than the tolerance and, if a decay hint beta is set, the panels have passed
/// t = a + 40/beta.
template <class F>
auto integrate_tail(F&& g, double a, const QuadratureSpec& spec = {}) {
  using V = std::decay_t<decltype(g(a))>;
  const double beta = spec.halfline_decay_hint;
  const double reach = beta > 0 ? a + 40.0 / beta : 0.0;
  double lo = a;
  double width = std::max(1.0, a);
  V total = g(a + 1.0) * 0.0;
  int small_run = 0;
  int growth_run = 0;
  double prev_mag = -1.0;
  for (int panel = 0; panel < 200; ++panel) {
    const double hi = lo + width;
    QuadratureSpec inner = spec;
    inner.abs_tol = std::max(spec.abs_tol, 0.1 * spec.rel_tol * detail::magnitude(total));
    V piece = integrate_finite(g, lo, hi, inner);
    total += piece;
    const double mag = detail::magnitude(piece);
    const double target = std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total));
    small_run = (mag <= target) ? small_run + 1 : 0;
    if (small_run >= 3 && hi >= reach) return total;
    growth_run = (prev_mag >= 0 && mag >= prev_mag && mag > target) ? growth_run + 1 : 0;
    if (growth_run >= 8) {
      throw ConvergenceError("integrate_tail: panel contributions not decaying (divergence suspected)",
                             detail::first_component(total), mag);
    }
    prev_mag = mag;
    lo = hi;
    width *= 2.0;
  }
  throw ConvergenceError("integrate_tail: panel limit reached", detail::first_component(total),
                         prev_mag);
}

/// Integral of g over (0, b] by panels [b/2^{i+1}, b/2^i] toward zero.
template <class F>
auto integrate_head(F&& g, double b, const QuadratureSpec& spec = {}) {
  using V = std::decay_t<decltype(g(b))>;
  V total = g(b) * 0.0;
  double hi = b;
  int small_run = 0;
  double mag = 0.0;
  for (int panel = 0; panel < 400; ++panel) {
    const double lo = 0.5 * hi;
    QuadratureSpec inner = spec;
    inner.abs_tol = std::max(spec.abs_tol, 0.1 * spec.rel_tol * detail::magnitude(total));
    V piece = integrate_finite(g, lo, hi, inner);
    total += piece;
    mag = detail::magnitude(piece);
    const double target = std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total));
    small_run = (mag <= target) ? small_run + 1 : 0;
    if (small_run >= 3) return total;
    hi = lo;
  }
  throw ConvergenceError("integrate_head: panel limit reached near zero",
                         detail::first_component(total), mag);
}

/// Integral of g over (0, infinity): split at 1, geometric panels both ways.
template <class F>
auto integrate_halfline(F&& g, const QuadratureSpec& spec = {}) {
  auto head = integrate_head(g, 1.0, spec);
  auto tail = integrate_tail(g, 1.0, spec);
  return decltype(head)(head + tail);
}

template <class V>
struct LineIntegral {
  V value;
  double tail_proxy;  ///< |G(c + iT)|
};

/// (1/2 pi i) * integral over c-iT..c+iT of G(s) y^{-s} ds by the trapezoidal rule.
template <class F>
auto integrate_vertical_line(F&& G, double y, const LineIntegralSpec& line) {
  line.validate();
  if (!(y > 0)) throw DomainError("integrate_vertical_line: y must be positive");
  using V = std::decay_t<decltype(G(Complex(line.c, 0.0)))>;
  const int n = line.n_points;
  const double h = 2.0 * line.t_max / (n - 1);
  const double log_y = std::log(y);
  V sum = G(Complex(line.c, 0.0)) * 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = -line.t_max + i * h;
    const Complex s(line.c, t);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += G(s) * (w * std::exp(-s * log_y));
  }
  V value = sum * (h / (2.0 * kPi));
  const double proxy = std::max(detail::magnitude(G(Complex(line.c, line.t_max))),
                                detail::magnitude(G(Complex(line.c, -line.t_max))));
  return LineIntegral<V>{value, proxy};
}

}  // namespace vvl
