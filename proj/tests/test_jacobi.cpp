#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "jacobi_oracle.hpp"
#include "oracle.hpp"
#include "vvl/jacobi.hpp"

using namespace vvl;
using namespace jacobi_oracle;

namespace {

// Adds `add` to every stored representative of the class of (l, r).
void perturb_class(JacobiExpansion& F, long long l, long long r, Complex add) {
  const long long D = F.discriminant(l, r), rho = mod(r, 2 * F.index);
  for (auto& [key, c] : F.plus) {
    if (F.discriminant(key.first, key.second) == D && mod(key.second, 2 * F.index) == rho) c += add;
  }
}

}  // namespace

TEST_CASE("theta series") {
  // m = 1, j = 2, z = 0: sum over even r of e^{pi i r^2 tau / 2} at tau = i.
  double ref = 0.0;
  for (int r = -100; r <= 100; r += 2) ref += std::exp(-kPi * r * r / 2.0);
  CHECK(std::abs(theta_series(1, 2, kI, 0.0).value - ref) < 1e-14);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const Complex tau = random_tau(rng), z = random_z(rng);
    for (int m : {1, 2, 3}) {
      for (int j = 1; j <= 2 * m; ++j) {
        const Complex a = theta_series(m, j, tau, z).value;
        CHECK(std::abs(theta_series(m, j, tau, z + 1.0).value - a) < 1e-13);
        CHECK(std::abs(theta_series(m, j + 2 * m, tau, z).value - a) < 1e-13);
      }
    }
  }
  const auto short_window = theta_series(1, 1, Complex(0.0, 0.05), 0.0, 0);
  CHECK_FALSE(short_window.truncation_ok);
  CHECK(theta_series(1, 1, kI, 0.0, 6).truncation_ok);
}

TEST_CASE("theta decomposition index bookkeeping") {
  JacobiExpansion F(10, 1);
  F.set_plus(1, 0, 1.0);
  const auto comps = theta_decompose(F);
  REQUIRE(comps.dim() == 2);
  CHECK(comps.kappa()[0] == Rational(3, 4));
  CHECK(comps.kappa()[1] == Rational(0));
  // j = 2m carries n = 4l = 4, i.e. frequency n / 4m = 1.
  CHECK(comps.plus.coeffs[0].empty());
  CHECK(comps.plus.get(1, 1) == Complex(1.0));
  CHECK(theta_kappa(2, 1) == Rational(7, 8));
  CHECK(theta_kappa(2, 3) == Rational(7, 8));
  CHECK(theta_kappa(3, 6) == Rational(0));

  JacobiExpansion bad(10, 1);
  bad.set_plus(1, 0, 1.0);
  bad.set_plus(2, 2, 2.0);  // same class (D = 4, r even) with a different value
  CHECK_THROWS_AS(theta_decompose(bad), InputError);
  CHECK_THROWS_AS(bad.set_minus(1, 0, 1.0), InputError);
}

TEST_CASE("decompose then reconstruct equals direct evaluation") {
  std::mt19937_64 rng(17);
  for (int m : {1, 2}) {
    for (bool minus : {false, true}) {
      const auto F = random_jacobi(2, m, rng, minus);
      const auto comps = theta_decompose(F);
      for (int i = 0; i < 10; ++i) {
        const Complex tau = random_tau(rng), z = random_z(rng);
        const Complex direct = oracle_jacobi(F, tau, z);
        const Complex rec = theta_reconstruct(comps, m, tau, z).value;
        CHECK_MESSAGE(std::abs(rec - direct) <= 1e-10 * std::max(1.0, std::abs(direct)),
                      "m=" << m << " minus=" << minus << " tau=" << tau << " z=" << z);
        CHECK(std::abs(jacobi_evaluate(F, tau, z).value - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
      }
    }
  }
  HarmonicMaassExpansion zero(Weight(3, 2), FourierExpansion({Rational(3, 4), Rational(0)}));
  CHECK(theta_reconstruct(zero, 1, kI, 0.3).value == Complex(0.0));
  // One term: F_1 = e^{2 pi i (3/4) tau} gives that exponential times theta_{1,1}.
  HarmonicMaassExpansion one = zero;
  one.plus.set(0, 0, 1.0);
  const Complex tau(0.1, 0.8), z(0.2, 0.1);
  CHECK(std::abs(theta_reconstruct(one, 1, tau, z).value -
                 std::exp(2.0 * kPi * kI * 0.75 * tau) * theta_series(1, 1, tau, z).value) < 1e-15);
}

TEST_CASE("reconstruction of phi_10_1 against the eta-theta product") {
  const auto comps = theta_decompose(fixtures::phi_10_1());
  auto theta1 = [](Complex t, Complex z) {
    Complex s = 0.0;
    for (int n = -40; n <= 40; ++n) {
      const double h = n + 0.5;
      s += (n % 2 ? -1.0 : 1.0) * std::exp(kI * 2.0 * kPi * (h * h / 2 * t + h * z));
    }
    return s;
  };
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Complex tau = random_tau(rng), z = random_z(rng);
    const Complex th = theta1(tau, z);
    const Complex direct = std::pow(oracle::eta_product(tau), 18) * th * th;
    CHECK(std::abs(theta_reconstruct(comps, 1, tau, z).value - direct) <= 1e-10 * std::abs(direct));
  }
}

TEST_CASE("elliptic invariance of reconstructions") {
  std::mt19937_64 rng(8);
  for (int m : {1, 2}) {
    const auto comps = theta_decompose(random_jacobi(4, m, rng, true));
    for (int i = 0; i < 5; ++i) {
      const Complex tau = random_tau(rng), z = random_z(rng);
      const Complex base = theta_reconstruct(comps, m, tau, z).value;
      const Complex shifted = std::exp(2.0 * kPi * kI * double(m) * (tau + 2.0 * z)) *
                              theta_reconstruct(comps, m, tau, z + tau).value;
      const Complex translated = theta_reconstruct(comps, m, tau, z + 1.0).value;
      CHECK(std::abs(shifted - base) <= 1e-8 * std::max(1.0, std::abs(base)));
      CHECK(std::abs(translated - base) <= 1e-8 * std::max(1.0, std::abs(base)));
    }
  }
}

TEST_CASE("heat operator") {
  JacobiExpansion F(10, 1);
  F.set_plus(1, 2, 1.0);
  F.set_plus(1, 0, 1.0);
  const auto H = heat_operator(F);
  CHECK(H.plus.count({1, 2}) == 0);
  CHECK(H.plus.at({1, 0}) == Complex(4.0));
  // theta_{1,0}: D = 0 at (r^2/4, r) for even r.
  JacobiExpansion theta(10, 1);
  for (int r = -6; r <= 6; r += 2) theta.set_plus(r * r / 4, r, 1.0);
  CHECK(heat_operator(theta).plus.empty());
  JacobiExpansion with_minus(2, 1);
  with_minus.set_minus(-1, 1, 1.0);
  CHECK_THROWS_AS(heat_operator(with_minus), DomainError);

  // Finite differences of the evaluation against the coefficientwise action.
  std::mt19937_64 rng(31);
  for (int m : {1, 2}) {
    const auto G = random_jacobi(4, m, rng, false, 2);
    const auto LG = heat_operator(G);
    for (int i = 0; i < 4; ++i) {
      const Complex tau = random_tau(rng), z = random_z(rng);
      const double h = 1e-3;
      auto F_at = [&](Complex t, Complex zz) { return jacobi_evaluate(G, t, zz).value; };
      auto d1 = [&](auto f) { return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12 * h); };
      auto d2 = [&](auto f) {
        return (-f(2 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2 * h)) / (12 * h * h);
      };
      const Complex dtau = d1([&](double e) { return F_at(tau + e, z); });
      const Complex dzz = d2([&](double e) { return F_at(tau, z + e); });
      const Complex fd = (2.0 * m / (kPi * kI)) * dtau - dzz / std::pow(2.0 * kPi * kI, 2);
      const Complex want = jacobi_evaluate(LG, tau, z).value;
      CHECK_MESSAGE(std::abs(fd - want) <= 1e-6 * std::max(1.0, std::abs(want)), "m=" << m);
    }
  }
}

TEST_CASE("alpha_k operator") {
  JacobiExpansion theta(10, 1);
  for (int r = -6; r <= 6; r += 2) theta.set_plus(r * r / 4, r, 1.0);
  const Complex tau(0.2, 0.9), z(0.1, 0.05);
  CHECK(std::abs(alpha_k_evaluate(theta, tau, z).value - 4.75 * jacobi_evaluate(theta, tau, z).value) < 1e-13);
  CHECK(alpha_k_evaluate(JacobiExpansion(10, 1), tau, z).value == Complex(0.0));

  std::mt19937_64 rng(12);
  for (int m : {1, 2}) {
    const auto F = random_jacobi(2, m, rng, true);
    const auto comps = theta_decompose(F);
    for (int i = 0; i < 5; ++i) {
      const Complex t = random_tau(rng);
      const Complex zz = i % 2 ? random_z(rng) : Complex(0.0);
      // The component identity: alpha_k F = sum_j delta_{k-1/2}(F_j) theta_{m,j}.
      const FormValue d = delta_k_evaluate(comps, t);
      Complex via = 0.0;
      for (int j = 1; j <= 2 * m; ++j) via += d.value(j - 1) * theta_series(m, j, t, zz).value;
      const Complex direct = alpha_k_evaluate(F, t, zz).value;
      CHECK_MESSAGE(std::abs(direct - via) <= 1e-8 * std::max(1.0, std::abs(via)), "m=" << m);

      // The operator definition by finite differences of the evaluation.
      const double h = 1e-3;
      auto Fv = [&](Complex a, Complex b) { return jacobi_evaluate(F, a, b).value; };
      auto d1 = [&](auto f) { return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12 * h); };
      const Complex du = d1([&](double e) { return Fv(t + e, zz); });
      const Complex dv = d1([&](double e) { return Fv(t + kI * e, zz); });
      const Complex dzz = (-Fv(t, zz + 2 * h) + 16.0 * Fv(t, zz + h) - 30.0 * Fv(t, zz) + 16.0 * Fv(t, zz - h) -
                           Fv(t, zz - 2 * h)) /
                          (12 * h * h);
      const Complex d_bar = 0.5 * (du + kI * dv), d_tau = 0.5 * (du - kI * dv);
      const Complex heat = (2.0 * m / (kPi * kI)) * d_tau - dzz / std::pow(2.0 * kPi * kI, 2);
      const Complex fd = t * (d_bar + (kPi * kI / (2.0 * m)) * heat) + 0.75 * Fv(t, zz);
      CHECK(std::abs(fd - direct) <= 1e-6 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("Jacobi L-series") {
  const auto phi = TestFunction::poly_bump(0.5, 2.0, 3);
  JacobiExpansion one(10, 1);
  one.set_plus(1, 1, 1.0);  // D = 3, component j = 1
  const auto L1 = jacobi_L(one, phi);
  CHECK(std::abs(L1.value(0) - laplace(phi, kPi * 3.0 / 2.0)) < 1e-15);
  CHECK(L1.value(1) == Complex(0.0));
  CHECK(jacobi_L(JacobiExpansion(10, 2), phi).value.isZero());

  // Against a hand-built component vector with kappa_j = ((-j^2) mod 4m)/4m.
  JacobiExpansion F(2, 2);
  F.set_plus(1, 1, 0.5);   // D = 7, j = 1: n = 7 = 0 * 8 + 7, kappa 7/8
  F.set_plus(1, 2, -2.0);  // D = 4, j = 2: kappa 4/8
  F.set_plus(0, 4, 1.5);   // D = -16, j = 4: kappa 0, N = -2
  F.set_minus(0, 3, 0.25); // D = -9, j = 3: kappa 7/8, N = -2
  HarmonicMaassExpansion hand(Weight(3, 2), FourierExpansion({Rational(7, 8), Rational(1, 2), Rational(7, 8), Rational(0)}));
  hand.plus.set(0, 0, 0.5);
  hand.plus.set(1, 0, -2.0);
  hand.plus.set(3, -2, 1.5);
  hand.plus.n0 = 2;
  hand.set_minus(2, -2, 0.25);
  const auto bump = TestFunction::poly_bump(0.8, 1.6, 2);
  const VectorXc a = jacobi_L(F, bump).value, b = L_harmonic(hand, bump).value;
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-14 * b.cwiseAbs().maxCoeff());
}

TEST_CASE("Jacobi functional equations") {
  const auto F = fixtures::phi_10_1();
  const auto comps = theta_decompose(F);
  const auto ctx = jacobi_context(10, 1, comps.plus.n0);
  for (const auto& g : {GroupElement::S(), GroupElement::T(), GroupElement{2, 1, 1, 1}}) {
    CHECK(slash_residual(comps, ctx, g, default_slash_samples(), {}) <= 1e-10);
  }
  // The plain Weil representation is the wrong one for theta components.
  const FormContext wrong{ctx.weight, ctx.multiplier, Representation::weil(1, false, true), ctx.n0};
  CHECK(slash_residual(comps, wrong, GroupElement::S(), default_slash_samples(), {}) > 1e-3);

  for (const auto& phi : covering_bumps(0.5, 2.0, 4)) {
    for (FEMode mode : {FEMode::Plain, FEMode::Delta}) {
      CHECK(jacobi_fe_residual(F, phi, mode).residual <= 1e-6);
    }
  }
  CHECK(jacobi_fe_residual(JacobiExpansion(10, 1), TestFunction::poly_bump(0.5, 2.0, 3)).residual == 0.0);
  auto bad = F;
  perturb_class(bad, 2, 1, 1e-3);  // D = 7
  CHECK(jacobi_fe_residual(bad, TestFunction::poly_bump(0.25, 0.5, 3)).residual > 1e-5);
}

TEST_CASE("partial L-series") {
  JacobiExpansion zero(10, 1);
  CHECK(partial_L(zero, 1, 8.0) == Complex(0.0));
  JacobiExpansion one(10, 2);
  one.set_plus(2, 3, 2.0);  // D = 7, j = 3
  CHECK(std::abs(partial_L(one, 3, 8.0) - 2.0 * std::pow(7.0 / 8.0, -8.0)) < 1e-13);
  CHECK(partial_L(one, 1, 8.0) == Complex(0.0));
  CHECK_THROWS_AS(partial_L(one, 3, 5.0), DomainError);
  CHECK_NOTHROW(partial_L(one, 3, 5.0, true));
  // Against classical_L of the component vector.
  const auto F = fixtures::phi_10_1();
  const auto cl = classical_L(theta_decompose(F).plus, Weight(19, 2), 8.0).value;
  for (int j = 1; j <= 2; ++j) CHECK(std::abs(partial_L(F, j, 8.0) - cl(j - 1)) <= 1e-10 * std::abs(cl(j - 1)));
}

TEST_CASE("Kohnen plus space") {
  HarmonicMaassExpansion comps(Weight(19, 2), FourierExpansion({Rational(3, 4), Rational(0)}));
  comps.plus.set(0, 0, 1.0);  // exponent 3/4 -> n = 3
  comps.plus.set(1, 1, 2.0);  // exponent 1 -> n = 4
  const auto f = kohnen_map(comps);
  CHECK(f.plus.get(0, 3) == Complex(1.0));
  CHECK(f.plus.get(0, 4) == Complex(2.0));
  CHECK(f.plus.coeffs[0].size() == 2);

  // plus_split inverts kohnen_map exactly.
  const auto F = fixtures::phi_10_1();
  const auto tc = theta_decompose(F);
  const auto split = plus_split(kohnen_map(F));
  CHECK(split.plus.kappa == tc.plus.kappa);
  CHECK(split.plus.coeffs == tc.plus.coeffs);
  CHECK(split.minus == tc.minus);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    const auto G = random_jacobi(4, 1, rng, true);
    const auto g = theta_decompose(G);
    const auto back = plus_split(kohnen_map(G));
    CHECK(back.plus.coeffs == g.plus.coeffs);
    CHECK(back.minus == g.minus);
  }

  HarmonicMaassExpansion p(Weight(19, 2), FourierExpansion::scalar());
  p.plus.set(0, 3, 5.0);
  p.plus.set(0, 4, -1.0);
  const auto s = plus_split(p);
  CHECK(s.plus.get(0, 0) == Complex(5.0));
  CHECK(s.plus.get(1, 1) == Complex(-1.0));
  const auto sum_back = kohnen_map(s);
  CHECK(sum_back.plus.coeffs == p.plus.coeffs);
  p.plus.set(0, 5, 1.0);
  CHECK_THROWS_AS(plus_split(p), InputError);

  // L(psi(F), j, s) = 4^{-s} L(F, j, s).
  const auto f10 = kohnen_map(F);
  for (double sv : {3.0, 5.0, 8.0}) {
    for (int j = 1; j <= 2; ++j) {
      const Complex lhs = plus_partial_L(f10, j, sv, true);
      const Complex rhs = std::pow(4.0, -sv) * partial_L(F, j, sv, true);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
  }
  CHECK_THROWS_AS(plus_partial_L(f10, 1, 5.0), DomainError);

  HarmonicMaassExpansion zero(Weight(19, 2), FourierExpansion::scalar());
  CHECK(plus_fe_residual(zero, TestFunction::poly_bump(0.5, 2.0, 3)).residual == 0.0);
  CHECK(plus_fe_residual(f10, TestFunction::poly_bump(0.5, 2.0, 3)).residual <= 1e-6);
  auto bad = f10;
  bad.plus.set(0, 3, bad.plus.get(0, 3) + 1e-3);
  CHECK(plus_fe_residual(bad, TestFunction::poly_bump(0.25, 0.5, 3)).residual > 1e-5);
}
