#pragma once

// The subcommands as library functions, so tests can run them in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace minvec::cli {

enum ExitCode : int { kPass = 0, kFalsified = 1, kUsage = 2, kConstruction = 3, kBudget = 4 };

struct RunConfig {
  std::int64_t budget = 200'000'000;  // enumeration size / pair count limit
  std::uint64_t seed = 1;
  int precision_margin = 2;
  std::optional<std::string> out;
};

struct CommandResult {
  int exit_code = kPass;
  std::string report;       // full report text (empty on early errors)
  std::string diagnostic;   // error message for exit codes 2-4
};

inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> v{"character", "heisenberg", "intertwine", "omega", "convolution", "concentration"};
  return v;
}

CommandResult cmd_order(const std::string& datum_path, const RunConfig& cfg);
CommandResult cmd_verify(const std::string& datum_path, const std::vector<std::string>& checks, const RunConfig& cfg);
CommandResult cmd_count(const std::string& query_path, const RunConfig& cfg);
CommandResult cmd_exponent(int n, const RunConfig& cfg);
/// Every *.datum and *.query under data_dir plus exponents 2 and 3; one
/// report file per run in cfg.out (default "reports") and summary.txt.
CommandResult cmd_report_all(const std::string& data_dir, const RunConfig& cfg);

/// Parses argv, runs the subcommand, writes the report to cfg.out or out.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minvec::cli
