#pragma once

// Multiplier systems and finite-dimensional unitary representations of
// SL2(Z), including the Weil representation of the metaplectic cover.
//
// Both are evaluated along a word in S, T, T^{-1}. For weight k the branch
// cocycle of (c tau + d)^k is fixed by comparing principal logarithms at the
// base point tau0 = i, so every evaluation is independent of the chosen word.

#include "vvl/group.hpp"
#include "vvl/rational.hpp"
#include "vvl/types.hpp"

namespace vvl {

/// Sum of principal logs of the automorphy factors picked up along the word at
/// tau0 = i, minus Log(c i + d) for the product; always 2 pi i times an integer.
/// Returns that integer.
long long branch_winding(const Word& w);

struct MultiplierSystem {
  enum class Kind { Trivial, EtaPower, Explicit };
  Kind kind = Kind::Trivial;
  int eta_power = 0;         ///< r for chi_eta^r
  Complex s_value{1.0};      ///< chi(S) for explicit multipliers
  Complex t_value{1.0};      ///< chi(T) for explicit multipliers
  Weight weight{0};          ///< weight used in the consistency cocycle (explicit kind)

  static MultiplierSystem trivial() { return {}; }
  static MultiplierSystem eta(int r = 1);
  static MultiplierSystem explicit_values(Complex s, Complex t, Weight k);

  /// chi evaluated on a word, respecting the weight-k consistency condition.
  Complex eval(const Word& w) const;
  Complex eval(const GroupElement& g) const { return eval(decompose_word(g)); }
  Complex operator()(const GroupElement& g) const { return eval(g); }
  /// chi(gamma)^{-1} = conj(chi(gamma)) by unitarity.
  MultiplierSystem conjugate() const;
};

/// chi_eta(S) = e^{-pi i/4}, chi_eta(T) = e^{pi i/12}.
Complex eta_multiplier(const Word& w);

struct Representation {
  enum class Kind { Explicit, Weil };
  Kind kind = Kind::Explicit;
  int dim = 1;
  MatrixXc s_matrix = MatrixXc::Identity(1, 1);
  MatrixXc t_matrix = MatrixXc::Identity(1, 1);
  int index = 0;          ///< m for Weil kinds (dim = 2m)
  bool conjugate = false; ///< complex-conjugate the Weil matrices
  bool twisted = false;   ///< multiply by chi_eta(gamma)

  static Representation trivial(int dim = 1);
  static Representation explicit_matrices(const MatrixXc& s, const MatrixXc& t);
  static Representation weil(int m, bool conjugate = false, bool twisted = false);

  MatrixXc eval(const Word& w) const;
  MatrixXc eval(const GroupElement& g) const { return eval(decompose_word(g)); }
  MatrixXc operator()(const GroupElement& g) const { return eval(g); }
};

/// Weil generator matrices on the basis e_l, l = 1..2m:
/// rho(T) e_l = e(l^2/4m) e_l, rho(S) e_l = (2im)^{-1/2} sum_{l'} e(-l l'/2m) e_{l'}.
MatrixXc weil_t(int m);
MatrixXc weil_s(int m);

struct CompatibilityReport {
  /// ||rho(-I) chi(-I) + I_m||: the condition as literally displayed.
  double literal_residual = 0;
  bool literal_holds = false;
  /// ||rho(-I) chi(-I) - e^{-i pi k} I_m||: what f|(-I) = f actually requires.
  double corrected_residual = 0;
  bool corrected_holds = false;
};

CompatibilityReport check_compatibility(const Weight& k, const MultiplierSystem& chi, const Representation& rho,
                                        double tol = 1e-12);

}  // namespace vvl
