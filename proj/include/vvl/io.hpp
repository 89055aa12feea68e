#pragma once

// File formats and fixture generation: JSON (de)serialization of forms, test
// functions and Jacobi expansions with validation errors that carry a JSON
// pointer, exact-integer oracle generators, and content digests.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vvl/expansion.hpp"
#include "vvl/jacobi.hpp"
#include "vvl/testfn.hpp"

namespace vvl::io {

using json = nlohmann::json;

/// A schema violation at the JSON pointer `pointer()` ("" is the document root).
class SchemaError : public InputError {
 public:
  SchemaError(const std::string& pointer, const std::string& message)
      : InputError((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// A form together with its transformation data, as stored in a Form file.
struct FormFile {
  HarmonicMaassExpansion form;
  FormContext context;
};

FormFile form_from_json(const json& doc);
/// Coefficient arrays are sorted by (j, n), so equal forms serialize to equal bytes.
json form_to_json(const FormFile& file);

TestFunction testfn_from_json(const json& doc);
/// Plain members of the four families only (no slashing or power weights).
json testfn_to_json(const TestFunction& phi);

JacobiExpansion jacobi_from_json(const json& doc);
json jacobi_to_json(const JacobiExpansion& F);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

struct LoadedFile {
  json doc;
  std::string digest;  ///< fnv1a64 of the raw file contents
};
/// Reads and parses a JSON file; InputError if it is missing or malformed.
LoadedFile load_json_file(const std::string& path);

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i".
Complex parse_complex(const std::string& text);

enum class OracleKind { Delta, Eta, EtaInverse24 };
OracleKind parse_oracle_kind(const std::string& name);  ///< "delta", "eta", "eta-inverse-24"

/// Coefficients of prod_{n >= 1} (1 - q^n)^r up to q^{count - 1}, in exact integer
/// arithmetic. DomainError if a value leaves the 128-bit range.
std::vector<__int128> euler_power_series(int r, int count);

/// Delta: a(1..n_terms). eta: the q-product prod (1 - q^n) at n = 0..n_terms-1 with kappa = 1/24.
/// eta^{-24}: a(-1..n_terms-2). Requires n_terms >= 10.
FormFile gen_oracle(OracleKind kind, int n_terms);

}  // namespace vvl::io
