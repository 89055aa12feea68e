#include "vvl/group.hpp"

#include <cmath>
#include <sstream>

namespace vvl {

namespace {

long long mul_add(long long x, long long y, long long u, long long v) {
  long long p, q, r;
  if (__builtin_mul_overflow(x, y, &p) || __builtin_mul_overflow(u, v, &q) || __builtin_add_overflow(p, q, &r)) {
    throw DomainError("SL2(Z) arithmetic overflow");
  }
  return r;
}

// Nearest integer to x / y, ties toward zero.
long long nearest_quotient(long long x, long long y) {
  const long double q = static_cast<long double>(x) / static_cast<long double>(y);
  long long r = std::llround(q);
  // Correct for rounding of huge values so that |x - r y| <= |y| / 2.
  while (2 * std::llabs(x - r * y) > std::llabs(y)) r += ((x - r * y) > 0) == (y > 0) ? 1 : -1;
  return r;
}

}  // namespace

GroupElement::GroupElement(long long a_, long long b_, long long c_, long long d_) : a(a_), b(b_), c(c_), d(d_) {
  if (mul_add(a, d, -b, c) != 1) throw DomainError("GroupElement: determinant must be 1");
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  GroupElement r;
  r.a = mul_add(x.a, y.a, x.b, y.c);
  r.b = mul_add(x.a, y.b, x.b, y.d);
  r.c = mul_add(x.c, y.a, x.d, y.c);
  r.d = mul_add(x.c, y.b, x.d, y.d);
  return r;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << "[" << a << " " << b << "; " << c << " " << d << "]";
  return os.str();
}

GroupElement generator(Gen g) {
  switch (g) {
    case Gen::S:
      return GroupElement::S();
    case Gen::T:
      return GroupElement::T();
    case Gen::Tinv:
      return GroupElement::T().inverse();
  }
  return {};
}

GroupElement word_product(const Word& w) {
  GroupElement p;
  for (Gen g : w) p = p * generator(g);
  return p;
}

Word decompose_word(const GroupElement& gamma) {
  Word word;
  auto push_t_power = [&](long long q) {
    for (long long i = 0; i < std::llabs(q); ++i) word.push_back(q > 0 ? Gen::T : Gen::Tinv);
  };
  GroupElement m = gamma;
  while (m.c != 0) {
    // m = T^q S m' with m' = S^{-1} T^{-q} m, whose lower-left entry is q c - a.
    const long long q = nearest_quotient(m.a, m.c);
    push_t_power(q);
    word.push_back(Gen::S);
    const long long a2 = m.a - q * m.c, b2 = m.b - q * m.d;
    m = GroupElement(m.c, m.d, -a2, -b2);
  }
  // m = +-T^n
  if (m.a == 1) {
    push_t_power(m.b);
  } else {
    word.push_back(Gen::S);
    word.push_back(Gen::S);
    push_t_power(-m.b);
  }
  return word;
}

std::string word_string(const Word& w) {
  std::string s;
  for (Gen g : w) {
    if (!s.empty()) s += " ";
    s += g == Gen::S ? "S" : g == Gen::T ? "T" : "T^-1";
  }
  return s;
}

}  // namespace vvl
