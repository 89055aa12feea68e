#include "vvl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace vvl::io {

namespace {

std::string child(const std::string& ptr, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, size_t i) { return ptr + "/" + std::to_string(i); }

void require_object(const json& doc, const std::string& ptr) {
  if (!doc.is_object()) throw SchemaError(ptr, "expected an object");
}

const json& field(const json& doc, const std::string& ptr, const std::string& key) {
  require_object(doc, ptr);
  const auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(child(ptr, key), "missing required field");
  return *it;
}

const json& array_field(const json& doc, const std::string& ptr, const std::string& key) {
  const json& a = field(doc, ptr, key);
  if (!a.is_array()) throw SchemaError(child(ptr, key), "expected an array");
  return a;
}

double number(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError(ptr, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(ptr, "expected a finite number");
  return x;
}

long long integer(const json& v, const std::string& ptr) {
  if (!v.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  return v.get<long long>();
}

bool boolean(const json& v, const std::string& ptr) {
  if (!v.is_boolean()) throw SchemaError(ptr, "expected a boolean");
  return v.get<bool>();
}

std::string string(const json& v, const std::string& ptr) {
  if (!v.is_string()) throw SchemaError(ptr, "expected a string");
  return v.get<std::string>();
}

double number_field(const json& doc, const std::string& ptr, const std::string& key) {
  return number(field(doc, ptr, key), child(ptr, key));
}

long long integer_field(const json& doc, const std::string& ptr, const std::string& key) {
  return integer(field(doc, ptr, key), child(ptr, key));
}

Complex complex_value(const json& v, const std::string& ptr) {
  return {number_field(v, ptr, "re"), number_field(v, ptr, "im")};
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Rational rational(const json& v, const std::string& ptr) {
  try {
    return Rational::parse(string(v, ptr));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(ptr, e.what());
  }
}

std::string rational_text(const Rational& r) { return std::to_string(r.num()) + "/" + std::to_string(r.den()); }

MultiplierSystem multiplier_from_json(const json& doc, const std::string& ptr, const Weight& k) {
  const std::string type = string(field(doc, ptr, "type"), child(ptr, "type"));
  if (type == "trivial") return MultiplierSystem::trivial();
  if (type == "eta_power") return MultiplierSystem::eta(static_cast<int>(integer_field(doc, ptr, "r")));
  if (type == "explicit") {
    const Complex s = complex_value(field(doc, ptr, "S"), child(ptr, "S"));
    const Complex t = complex_value(field(doc, ptr, "T"), child(ptr, "T"));
    if (std::abs(std::abs(s) - 1.0) > 1e-12) throw SchemaError(child(ptr, "S"), "multiplier value must have modulus 1");
    if (std::abs(std::abs(t) - 1.0) > 1e-12) throw SchemaError(child(ptr, "T"), "multiplier value must have modulus 1");
    return MultiplierSystem::explicit_values(s, t, k);
  }
  throw SchemaError(child(ptr, "type"), "unknown multiplier type '" + type + "'");
}

json multiplier_to_json(const MultiplierSystem& chi) {
  switch (chi.kind) {
    case MultiplierSystem::Kind::Trivial:
      return json{{"type", "trivial"}};
    case MultiplierSystem::Kind::EtaPower:
      return json{{"type", "eta_power"}, {"r", chi.eta_power}};
    case MultiplierSystem::Kind::Explicit:
      return json{{"type", "explicit"}, {"S", complex_json(chi.s_value)}, {"T", complex_json(chi.t_value)}};
  }
  return {};
}

// Explicit matrices are a row-major list of [re, im] pairs.
MatrixXc matrix_from_json(const json& doc, const std::string& ptr) {
  if (!doc.is_array() || doc.empty()) throw SchemaError(ptr, "expected a non-empty array of [re, im] pairs");
  const auto dim = static_cast<long>(std::lround(std::sqrt(double(doc.size()))));
  if (static_cast<size_t>(dim * dim) != doc.size()) throw SchemaError(ptr, "entry count must be a perfect square");
  MatrixXc m(dim, dim);
  for (size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    const std::string p = child(ptr, i);
    if (!e.is_array() || e.size() != 2) throw SchemaError(p, "expected [re, im]");
    m(long(i) / dim, long(i) % dim) = Complex(number(e[0], child(p, 0)), number(e[1], child(p, 1)));
  }
  return m;
}

json matrix_to_json(const MatrixXc& m) {
  json out = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  }
  return out;
}

Representation representation_from_json(const json& doc, const std::string& ptr) {
  const std::string type = string(field(doc, ptr, "type"), child(ptr, "type"));
  if (type == "weil") {
    const long long m = integer_field(doc, ptr, "index");
    if (m < 1) throw SchemaError(child(ptr, "index"), "Weil index must be >= 1");
    return Representation::weil(static_cast<int>(m), boolean(field(doc, ptr, "conjugate"), child(ptr, "conjugate")),
                                boolean(field(doc, ptr, "twisted"), child(ptr, "twisted")));
  }
  if (type == "explicit") {
    const MatrixXc s = matrix_from_json(field(doc, ptr, "S"), child(ptr, "S"));
    const MatrixXc t = matrix_from_json(field(doc, ptr, "T"), child(ptr, "T"));
    if (s.rows() != t.rows()) throw SchemaError(child(ptr, "T"), "S and T must have the same dimension");
    return Representation::explicit_matrices(s, t);
  }
  throw SchemaError(child(ptr, "type"), "unknown representation type '" + type + "'");
}

json representation_to_json(const Representation& rho) {
  if (rho.kind == Representation::Kind::Weil) {
    return json{{"type", "weil"}, {"index", rho.index}, {"conjugate", rho.conjugate}, {"twisted", rho.twisted}};
  }
  return json{{"type", "explicit"}, {"S", matrix_to_json(rho.s_matrix)}, {"T", matrix_to_json(rho.t_matrix)}};
}

template <class Set>
void read_coefficients(const json& arr, const std::string& ptr, int dim, Set&& set) {
  std::set<std::pair<long long, long long>> seen;
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    const std::string p = child(ptr, i);
    const long long j = integer_field(e, p, "j");
    const long long n = integer_field(e, p, "n");
    if (j < 0 || j >= dim) throw SchemaError(child(p, "j"), "component index out of range [0, " + std::to_string(dim) + ")");
    if (!seen.insert({j, n}).second) throw SchemaError(p, "duplicate coefficient (j, n)");
    set(static_cast<int>(j), n, complex_value(e, p));
  }
}

json coefficients_to_json(const std::vector<CoefficientMap>& table) {
  json out = json::array();
  for (size_t j = 0; j < table.size(); ++j) {
    for (const auto& [n, c] : table[j]) {
      out.push_back(json{{"j", j}, {"n", n}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  return out;
}

template <class Fn>
auto rethrow_at(const std::string& ptr, Fn&& fn) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(ptr, e.what());
  }
}

}  // namespace

FormFile form_from_json(const json& doc) {
  const std::string root;
  require_object(doc, root);
  const Weight k = rational(field(doc, root, "weight"), "/weight");
  if (k.den() != 1 && k.den() != 2) throw SchemaError("/weight", "weight must be k/1 or k/2");
  const MultiplierSystem chi = multiplier_from_json(field(doc, root, "multiplier"), "/multiplier", k);
  const Representation rho = representation_from_json(field(doc, root, "representation"), "/representation");
  const json& kappa_doc = array_field(doc, root, "kappa");
  std::vector<Rational> kappa;
  for (size_t i = 0; i < kappa_doc.size(); ++i) {
    const Rational r = rational(kappa_doc[i], child("/kappa", i));
    if (r < Rational(0) || r >= Rational(1)) throw SchemaError(child("/kappa", i), "kappa must lie in [0, 1)");
    kappa.push_back(r);
  }
  if (kappa.empty()) throw SchemaError("/kappa", "at least one component is required");
  if (static_cast<int>(kappa.size()) != rho.dim) {
    throw SchemaError("/kappa", "length " + std::to_string(kappa.size()) + " does not match the representation dimension " +
                                    std::to_string(rho.dim));
  }
  FormFile out;
  out.form = HarmonicMaassExpansion(k, FourierExpansion(kappa));
  const int dim = out.form.dim();
  read_coefficients(array_field(doc, root, "coefficients_plus"), "/coefficients_plus", dim,
                    [&](int j, long long n, Complex c) { out.form.plus.set(j, n, c); });
  read_coefficients(array_field(doc, root, "coefficients_minus"), "/coefficients_minus", dim,
                    [&](int j, long long n, Complex c) { out.form.set_minus(j, n, c); });
  out.form.plus.n0 = integer_field(doc, root, "n0");
  out.form.plus.growth_C = number_field(doc, root, "growth_C");
  if (out.form.plus.growth_C < 0) throw SchemaError("/growth_C", "growth_C must be >= 0");
  rethrow_at(root, [&] {
    out.form.validate();
    return 0;
  });
  out.context = FormContext{k, chi, rho, out.form.plus.n0};
  return out;
}

json form_to_json(const FormFile& file) {
  const auto& f = file.form;
  json kappa = json::array();
  for (const auto& r : f.kappa()) kappa.push_back(rational_text(r));
  json doc;
  doc["weight"] = rational_text(f.weight);
  doc["multiplier"] = multiplier_to_json(file.context.multiplier);
  doc["representation"] = representation_to_json(file.context.representation);
  doc["kappa"] = kappa;
  doc["coefficients_plus"] = coefficients_to_json(f.plus.coeffs);
  doc["coefficients_minus"] = coefficients_to_json(f.minus);
  doc["n0"] = f.plus.n0;
  doc["growth_C"] = f.plus.growth_C;
  return doc;
}

TestFunction testfn_from_json(const json& doc) {
  const std::string root;
  const std::string family = string(field(doc, root, "family"), "/family");
  return rethrow_at(root, [&] {
    if (family == "poly_bump") {
      return TestFunction::poly_bump(number_field(doc, root, "a"), number_field(doc, root, "b"),
                                     static_cast<int>(integer_field(doc, root, "p")));
    }
    if (family == "exp_bump") return TestFunction::exp_bump(number_field(doc, root, "a"), number_field(doc, root, "b"));
    if (family == "symmetric_decay") {
      return TestFunction::symmetric_decay(number_field(doc, root, "alpha"), number_field(doc, root, "beta"));
    }
    if (family == "I_s") return TestFunction::kernel(complex_value(field(doc, root, "s"), "/s"));
    throw SchemaError("/family", "unknown test-function family '" + family + "'");
  });
}

json testfn_to_json(const TestFunction& phi) {
  if (!phi.is_plain()) throw DomainError("testfn_to_json: only plain family members have a file form");
  switch (phi.family()) {
    case TestFamily::PolyBump:
      return json{{"family", "poly_bump"}, {"a", phi.a()}, {"b", phi.b()}, {"p", phi.p()}};
    case TestFamily::ExpBump:
      return json{{"family", "exp_bump"}, {"a", phi.a()}, {"b", phi.b()}};
    case TestFamily::SymmetricDecay:
      return json{{"family", "symmetric_decay"}, {"alpha", phi.alpha()}, {"beta", phi.beta()}};
    case TestFamily::Kernel:
      return json{{"family", "I_s"}, {"s", complex_json(phi.kernel_s())}};
  }
  return {};
}

JacobiExpansion jacobi_from_json(const json& doc) {
  const std::string root;
  const long long k = integer_field(doc, root, "weight");
  const long long m = integer_field(doc, root, "index");
  if (k <= 0 || k % 2 != 0) throw SchemaError("/weight", "weight must be a positive even integer");
  if (m < 1) throw SchemaError("/index", "index must be >= 1");
  JacobiExpansion F(static_cast<int>(k), static_cast<int>(m));
  for (const char* part : {"coeffs_plus", "coeffs_minus"}) {
    const bool minus = std::string(part) == "coeffs_minus";
    const json& arr = array_field(doc, root, part);
    std::set<JacobiKey> seen;
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string p = child(child(root, part), i);
      const long long l = integer_field(arr[i], p, "l"), r = integer_field(arr[i], p, "r");
      if (!seen.insert({l, r}).second) throw SchemaError(p, "duplicate coefficient (l, r)");
      const Complex c = complex_value(arr[i], p);
      rethrow_at(p, [&] {
        minus ? F.set_minus(l, r, c) : F.set_plus(l, r, c);
        return 0;
      });
    }
  }
  if (doc.contains("growth_C")) F.growth_C = number_field(doc, root, "growth_C");
  rethrow_at(root, [&] {
    F.validate();
    return 0;
  });
  return F;
}

json jacobi_to_json(const JacobiExpansion& F) {
  auto entries = [](const JacobiCoefficientMap& m) {
    json out = json::array();
    for (const auto& [key, c] : m) {
      out.push_back(json{{"l", key.first}, {"r", key.second}, {"re", c.real()}, {"im", c.imag()}});
    }
    return out;
  };
  return json{{"weight", F.weight},
              {"index", F.index},
              {"coeffs_plus", entries(F.plus)},
              {"coeffs_minus", entries(F.minus)},
              {"growth_C", F.growth_C}};
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LoadedFile load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  LoadedFile out;
  out.digest = fnv1a64(bytes);
  try {
    out.doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": invalid JSON (" + e.what() + ")");
  }
  return out;
}

Complex parse_complex(const std::string& text) {
  static const std::regex number(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*)");
  static const std::regex full(
      R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*)");
  static const std::regex imag_only(R"(\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*)");
  std::smatch m;
  if (std::regex_match(text, m, number)) return {std::stod(m[1].str()), 0.0};
  if (std::regex_match(text, m, imag_only)) {
    const double b = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -b : b};
  }
  if (std::regex_match(text, m, full) && m[1].matched && m[2].matched) {
    const double b = m[3].matched ? std::stod(m[3].str()) : 1.0;
    return {std::stod(m[1].str()), m[2].str() == "-" ? -b : b};
  }
  throw InputError("cannot parse complex number '" + text + "' (expected a+bi)");
}

OracleKind parse_oracle_kind(const std::string& name) {
  if (name == "delta") return OracleKind::Delta;
  if (name == "eta") return OracleKind::Eta;
  if (name == "eta-inverse-24") return OracleKind::EtaInverse24;
  throw InputError("unknown oracle kind '" + name + "' (delta, eta, eta-inverse-24)");
}

std::vector<__int128> euler_power_series(int r, int count) {
  if (count < 1) throw DomainError("euler_power_series: count must be >= 1");
  // With P = prod (1 - q^n)^r, q P'/P = -r sum sigma(i) q^i gives
  // n b_n = -r sum_{i=1}^n sigma(i) b_{n-i}; every step is an exact integer operation.
  std::vector<__int128> sigma(count, 0), b(count, 0);
  for (int d = 1; d < count; ++d) {
    for (int n = d; n < count; n += d) sigma[n] += d;
  }
  b[0] = 1;
  for (int n = 1; n < count; ++n) {
    __int128 acc = 0;
    for (int i = 1; i <= n; ++i) {
      __int128 term;
      if (__builtin_mul_overflow(sigma[i], b[n - i], &term) || __builtin_add_overflow(acc, term, &acc)) {
        throw DomainError("euler_power_series: coefficients exceed 128-bit range; reduce the term count");
      }
    }
    __int128 scaled;
    if (__builtin_mul_overflow(acc, static_cast<__int128>(-r), &scaled)) {
      throw DomainError("euler_power_series: coefficients exceed 128-bit range; reduce the term count");
    }
    if (scaled % n != 0) throw DomainError("euler_power_series: inexact division (internal error)");
    b[n] = scaled / n;
  }
  return b;
}

FormFile gen_oracle(OracleKind kind, int n_terms) {
  if (n_terms < 10) throw DomainError("gen_oracle: n_terms must be >= 10");
  FormFile out;
  switch (kind) {
    case OracleKind::Delta: {
      const auto p = euler_power_series(24, n_terms);
      out.form = HarmonicMaassExpansion(Weight(12), FourierExpansion::scalar());
      for (int n = 1; n <= n_terms; ++n) out.form.plus.set(0, n, static_cast<double>(p[n - 1]));
      out.form.plus.growth_C = 4.0;
      out.context = {Weight(12), MultiplierSystem::trivial(), Representation::trivial(1), 0};
      break;
    }
    case OracleKind::Eta: {
      const auto p = euler_power_series(1, n_terms);
      out.form = HarmonicMaassExpansion(Weight(1, 2), FourierExpansion::scalar(Rational(1, 24)));
      for (int n = 0; n < n_terms; ++n) out.form.plus.set(0, n, static_cast<double>(p[n]));
      out.context = {Weight(1, 2), MultiplierSystem::eta(1), Representation::trivial(1), 0};
      break;
    }
    case OracleKind::EtaInverse24: {
      const auto p = euler_power_series(-24, n_terms);
      out.form = HarmonicMaassExpansion(Weight(-12), FourierExpansion::scalar());
      for (int i = 0; i < n_terms; ++i) out.form.plus.set(0, i - 1, static_cast<double>(p[i]));
      out.form.plus.n0 = 1;
      // Coefficients of 1/Delta grow like e^{4 pi sqrt n}.
      out.form.plus.growth_C = 4.0 * kPi + 0.5;
      out.context = {Weight(-12), MultiplierSystem::trivial(), Representation::trivial(1), 1};
      break;
    }
  }
  return out;
}

}  // namespace vvl::io
