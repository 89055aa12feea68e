#pragma once

// SL2(Z) elements and their words in the generators S, T, T^{-1}.

#include <string>
#include <vector>

#include "vvl/types.hpp"

namespace vvl {

struct GroupElement {
  long long a = 1, b = 0, c = 0, d = 1;

  /// Throws DomainError unless ad - bc = 1.
  GroupElement(long long a_, long long b_, long long c_, long long d_);
  GroupElement() = default;

  static GroupElement identity() { return {}; }
  static GroupElement S() { return {0, -1, 1, 0}; }
  static GroupElement T() { return {1, 1, 0, 1}; }
  static GroupElement minus_identity() { return {-1, 0, 0, -1}; }

  GroupElement inverse() const { return {d, -b, -c, a}; }
  /// Mobius action on the upper half-plane.
  Complex act(Complex tau) const { return (double(a) * tau + double(b)) / (double(c) * tau + double(d)); }
  /// Automorphy factor c tau + d.
  Complex j(Complex tau) const { return double(c) * tau + double(d); }

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y);
  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  std::string str() const;
};

enum class Gen { S, T, Tinv };
using Word = std::vector<Gen>;

GroupElement generator(Gen g);
GroupElement word_product(const Word& w);
/// Continued-fraction reduction: gamma = T^{q_1} S T^{q_2} S ... (optionally S^2) T^{q_r}.
Word decompose_word(const GroupElement& gamma);
std::string word_string(const Word& w);

}  // namespace vvl
