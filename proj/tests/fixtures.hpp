#pragma once

// Modular test inputs assembled from the exact-integer oracles in oracle.hpp.
// These never call the library's own oracle generator.

#include <map>

#include "oracle.hpp"
#include "vvl/expansion.hpp"
#include "vvl/jacobi.hpp"

namespace fixtures {

/// Delta = q prod (1-q^n)^24 with coefficients tau(1..n_terms).
inline vvl::FourierExpansion delta(int n_terms = 50) {
  const auto prod = oracle::euler_product_power(24, n_terms);
  vvl::FourierExpansion f = vvl::FourierExpansion::scalar();
  for (int n = 1; n <= n_terms; ++n) f.set(0, n, static_cast<double>(prod[n - 1]));
  f.growth_C = 4.0;
  return f;
}

/// eta = sum_{r >= 1} chi_12(r) q^{r^2/24}, stored at n = (r^2 - 1)/24 with kappa = 1/24.
inline vvl::FourierExpansion eta(int r_max = 49) {
  vvl::FourierExpansion f = vvl::FourierExpansion::scalar(vvl::Rational(1, 24));
  for (int r = 1; r <= r_max; ++r) {
    const int m = r % 12;
    if (m == 1 || m == 11) f.set(0, (r * r - 1) / 24, 1.0);
    if (m == 5 || m == 7) f.set(0, (r * r - 1) / 24, -1.0);
  }
  f.growth_C = 0.0;
  return f;
}

/// 1/Delta = q^{-1} prod (1-q^n)^{-24}, coefficients at n = -1 .. n_terms-2.
inline vvl::FourierExpansion eta_inverse_24(int n_terms = 50) {
  const auto prod = oracle::euler_product_power(-24, n_terms);
  vvl::FourierExpansion f = vvl::FourierExpansion::scalar();
  for (int i = 0; i < n_terms; ++i) f.set(0, i - 1, static_cast<double>(prod[i]));
  f.n0 = 1;
  // 1/Delta has coefficients of size e^{4 pi sqrt n}.
  f.growth_C = 4.0 * 3.14159265358979 + 0.5;
  return f;
}

inline vvl::FormContext delta_context() {
  return {vvl::Weight(12), vvl::MultiplierSystem::trivial(), vvl::Representation::trivial(1), 0};
}
inline vvl::FormContext eta_context() {
  return {vvl::Weight(1, 2), vvl::MultiplierSystem::eta(1), vvl::Representation::trivial(1), 0};
}
inline vvl::FormContext eta_inverse_24_context() {
  return {vvl::Weight(-12), vvl::MultiplierSystem::trivial(), vvl::Representation::trivial(1), 1};
}

/// phi_{10,1} = eta^18 theta_1(tau, z)^2 with theta_1 = sum (-1)^n q^{(n+1/2)^2/2} zeta^{n+1/2}.
/// Exact integer coefficients c(l, r) for 1 <= l <= l_max and every r.
inline vvl::JacobiExpansion phi_10_1(int l_max = 30) {
  const auto prod = oracle::euler_product_power(18, l_max + 1);
  std::map<std::pair<long long, long long>, __int128> c;
  // theta_1^2 term (a, b): q^{(a^2+a+b^2+b)/2 + 1/4} zeta^{a+b+1}, sign (-1)^{a+b}; eta^18 adds q^{3/4}.
  const int bound = static_cast<int>(std::sqrt(2.0 * l_max)) + 2;
  for (int a = -bound; a <= bound; ++a) {
    for (int b = -bound; b <= bound; ++b) {
      const long long e = (1LL * a * a + a + 1LL * b * b + b) / 2 + 1;
      const int sign = ((a + b) % 2 == 0) ? 1 : -1;
      for (long long l = e; l <= l_max; ++l) c[{l, a + b + 1}] += sign * prod[l - e];
    }
  }
  vvl::JacobiExpansion F(10, 1);
  for (const auto& [key, value] : c) {
    if (value != 0) F.set_plus(key.first, key.second, static_cast<double>(value));
  }
  F.growth_C = 4.0;
  return F;
}

}  // namespace fixtures
