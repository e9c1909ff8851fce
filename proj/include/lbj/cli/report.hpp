#pragma once

// CSV and JSON rendering for the command results. Column names and JSON keys
// are a public contract, documented in docs/cli.md.
//
// CSV: header row, ',' separated, '\n' terminated, reals with 17 significant
// digits ("%.17g"), booleans as 0/1. Identical inputs give identical bytes.

#include <string>
#include <vector>

#include "json.hpp"
#include "lbj/cli/commands.hpp"

namespace lbj::cli {

enum class Format { text, csv, json };

Format parse_format(const std::string& name);

/// Round-trip formatting, 17 significant digits.
std::string format_real(double value);

std::string render_eval(const EvalResult& result, Format format, bool explain);

std::string render_verification_csv(const VerificationReport& report);
nlohmann::json verification_to_json(const VerificationReport& report);
std::string render_verification_summary(const VerificationReport& report);

std::string render_expansion_csv(const std::vector<ExpansionRow>& rows);
nlohmann::json expansion_to_json(const ExpandOptions& options, const std::vector<ExpansionRow>& rows);

std::string render_recursion_csv(const RecursionTable& table);
nlohmann::json recursion_to_json(const RecursionTable& table);

std::string render_tridiag_csv(const TridiagReport& report);
nlohmann::json tridiag_to_json(const TridiagReport& report);

}  // namespace lbj::cli
