#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdiff/config.hpp"

namespace qdiff::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit status contract.
enum ExitCode : int {
  kPass = 0,
  /// At least one enabled check missed its tolerance.
  kCheckFailed = 1,
  /// Bad flags, bad config, unreadable or unwritable files.
  kConfigError = 2,
  /// A numerical module raised (degenerate immersion, quadrature failure, ...).
  kRuntimeError = 3,
};

/// Subcommands accepted by run().
const std::vector<std::string>& subcommands();

struct Outcome {
  nlohmann::ordered_json report;
  int exit_code = kPass;
};

/// Runs one subcommand on a validated config and writes configured artifacts.
Outcome analyze(const std::string& subcommand, const config::AnalysisConfig& cfg);

/// argv-style entry point (args excludes the program name). The JSON report
/// goes to `out` unless a report path is configured; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdiff::cli
