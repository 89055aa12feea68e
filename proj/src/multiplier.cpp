#include "vvl/multiplier.hpp"

#include <cmath>

namespace vvl {

namespace {

// Principal log of P(i) for an integer matrix P, from exact entries.
Complex log_of_image_of_i(const GroupElement& p) {
  const long double a = p.a, b = p.b, c = p.c, d = p.d;
  const long double norm = c * c + d * d;
  const long double re = (a * c + b * d) / norm;
  const long double im = 1.0L / norm;
  return {static_cast<double>(0.5L * std::log(re * re + im * im)), static_cast<double>(std::atan2(im, re))};
}

double max_abs(const MatrixXc& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

long long branch_winding(const Word& w) {
  // Arguments only: the moduli cancel exactly.
  double arg_sum = 0.0;
  GroupElement suffix;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it == Gen::S) arg_sum += log_of_image_of_i(suffix).imag();
    suffix = generator(*it) * suffix;
  }
  const double arg_total = std::atan2(static_cast<double>(suffix.c), static_cast<double>(suffix.d));
  return std::llround((arg_sum - arg_total) / (2.0 * kPi));
}

Complex eta_multiplier(const Word& w) {
  // Work with exponents of e^{2 pi i / 24} to keep the phase exact.
  long long units = 0;
  for (Gen g : w) units += g == Gen::S ? -3 : g == Gen::T ? 1 : -1;
  units += 12 * branch_winding(w);
  units %= 24;
  return e2pi(static_cast<double>(units) / 24.0);
}

MultiplierSystem MultiplierSystem::eta(int r) {
  MultiplierSystem m;
  m.kind = Kind::EtaPower;
  m.eta_power = r;
  m.weight = Rational(r, 2);
  return m;
}

MultiplierSystem MultiplierSystem::explicit_values(Complex s, Complex t, Weight k) {
  if (std::abs(std::abs(s) - 1.0) > 1e-12 || std::abs(std::abs(t) - 1.0) > 1e-12) {
    throw DomainError("explicit multiplier values must have unit modulus");
  }
  MultiplierSystem m;
  m.kind = Kind::Explicit;
  m.s_value = s;
  m.t_value = t;
  m.weight = k;
  return m;
}

Complex MultiplierSystem::eval(const Word& w) const {
  switch (kind) {
    case Kind::Trivial:
      return 1.0;
    case Kind::EtaPower: {
      if (eta_power == 0) return 1.0;
      // chi_eta^r: the phase is an exact multiple of 2 pi / 24.
      long long units = 0;
      for (Gen g : w) units += g == Gen::S ? -3 : g == Gen::T ? 1 : -1;
      units += 12 * branch_winding(w);
      units = ((units * eta_power) % 24 + 24) % 24;
      return e2pi(static_cast<double>(units) / 24.0);
    }
    case Kind::Explicit: {
      Complex v = 1.0;
      for (Gen g : w) v *= g == Gen::S ? s_value : g == Gen::T ? t_value : std::conj(t_value);
      return v * e2pi(weight.value() * static_cast<double>(branch_winding(w)));
    }
  }
  return 1.0;
}

MultiplierSystem MultiplierSystem::conjugate() const {
  MultiplierSystem m = *this;
  switch (kind) {
    case Kind::Trivial:
      break;
    case Kind::EtaPower:
      m.eta_power = -eta_power;
      m.weight = -weight;
      break;
    case Kind::Explicit:
      m.s_value = std::conj(s_value);
      m.t_value = std::conj(t_value);
      m.weight = -weight;
      break;
  }
  return m;
}

MatrixXc weil_t(int m) {
  MatrixXc t = MatrixXc::Zero(2 * m, 2 * m);
  for (int l = 1; l <= 2 * m; ++l) {
    // e(l^2 / 4m) with the exponent reduced exactly first
    const long long r = (static_cast<long long>(l) * l) % (4 * m);
    t(l - 1, l - 1) = e2pi(static_cast<double>(r) / (4.0 * m));
  }
  return t;
}

MatrixXc weil_s(int m) {
  MatrixXc s(2 * m, 2 * m);
  const Complex norm = 1.0 / std::sqrt(Complex(0.0, 2.0 * m));
  for (int l = 1; l <= 2 * m; ++l) {
    for (int lp = 1; lp <= 2 * m; ++lp) {
      const long long r = (static_cast<long long>(l) * lp) % (2 * m);
      s(lp - 1, l - 1) = norm * e2pi(-static_cast<double>(r) / (2.0 * m));
    }
  }
  return s;
}

Representation Representation::trivial(int dim) {
  if (dim < 1) throw DomainError("representation dimension must be positive");
  Representation r;
  r.dim = dim;
  r.s_matrix = MatrixXc::Identity(dim, dim);
  r.t_matrix = MatrixXc::Identity(dim, dim);
  return r;
}

Representation Representation::explicit_matrices(const MatrixXc& s, const MatrixXc& t) {
  if (s.rows() != s.cols() || t.rows() != t.cols() || s.rows() != t.rows() || s.rows() == 0) {
    throw DomainError("explicit representation: S and T must be square of equal size");
  }
  const int n = static_cast<int>(s.rows());
  const MatrixXc id = MatrixXc::Identity(n, n);
  if (max_abs(s.adjoint() * s - id) > 1e-10 || max_abs(t.adjoint() * t - id) > 1e-10) {
    throw DomainError("explicit representation: S and T must be unitary");
  }
  Representation r;
  r.dim = n;
  r.s_matrix = s;
  r.t_matrix = t;
  return r;
}

Representation Representation::weil(int m, bool conjugate, bool twisted) {
  if (m < 1) throw DomainError("Weil representation index must be positive");
  Representation r;
  r.kind = Kind::Weil;
  r.index = m;
  r.dim = 2 * m;
  r.conjugate = conjugate;
  r.twisted = twisted;
  r.s_matrix = weil_s(m);
  r.t_matrix = weil_t(m);
  return r;
}

MatrixXc Representation::eval(const Word& w) const {
  MatrixXc p = MatrixXc::Identity(dim, dim);
  // T is diagonal for Weil kinds but may be dense for explicit ones.
  const MatrixXc t_inv = t_matrix.adjoint();
  for (Gen g : w) p = p * (g == Gen::S ? s_matrix : g == Gen::T ? t_matrix : t_inv);
  if (kind == Kind::Explicit) return p;
  // Product of the lifts is the standard lift times (I, (-1)^n); rho((I,-1)) = rho(S)^4.
  if (branch_winding(w) % 2 != 0) {
    const MatrixXc s2 = s_matrix * s_matrix;
    p = p * (s2 * s2);
  }
  if (conjugate) p = p.conjugate().eval();
  if (twisted) p *= eta_multiplier(w);
  return p;
}

CompatibilityReport check_compatibility(const Weight& k, const MultiplierSystem& chi, const Representation& rho,
                                        double tol) {
  const GroupElement minus = GroupElement::minus_identity();
  const MatrixXc value = rho(minus) * chi(minus);
  const MatrixXc id = MatrixXc::Identity(rho.dim, rho.dim);
  CompatibilityReport r;
  r.literal_residual = max_abs(value + id);
  r.literal_holds = r.literal_residual <= tol;
  r.corrected_residual = max_abs(value - std::exp(-kI * kPi * k.value()) * id);
  r.corrected_holds = r.corrected_residual <= tol;
  return r;
}

}  // namespace vvl
