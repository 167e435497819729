#pragma once

// Subcommand runner shared by the C API and the command-line tool. Every
// report is a JSON object with schema_version, tool_version, subcommand,
// config (the normalized configuration, defaults filled in), checks, result
// and passed.

#include <string>
#include <string_view>

#include <json.hpp>

namespace leafchar {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct RunOutput {
  nlohmann::ordered_json report;
  std::string csv;  ///< empty when the subcommand has no tabular output
  /// 0 all checks passed, 1 a check failed, 2 usage or configuration error.
  int exit_code = 0;
};

/// Never throws for bad input: usage errors produce exit code 2 and a report
/// with an "error" member.
RunOutput run(std::string_view subcommand, const nlohmann::json& config);

/// Precision in bits from LEAFCHAR_PRECISION, or 256 when unset. Throws
/// InvalidArgument for a malformed value.
unsigned default_precision_bits();

/// Short human-readable summary of a report.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace leafchar
