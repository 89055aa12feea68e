#pragma once

// Command-line front end. Every command validates its input files, runs its
// checks, prints a human-readable report on `out` and optionally writes the
// same report as JSON (--out). Exit codes: 0 PASS/CONSISTENT, 1 input error,
// 2 FAIL/REFUTED.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace vvl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitRefuted = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Human-readable rendering of a report; numbers are printed exactly as in its JSON form.
std::string render_report(const nlohmann::json& report);

}  // namespace vvl::cli
