#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foodchain/fode.hpp"
#include "foodchain/sweep.hpp"
#include "foodchain/types.hpp"

namespace foodchain::cli {

/// Bad flags, bad config keys, or invariant violations. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsage = 2 };

struct RunConfig {
  std::string command;  // simulate|equilibria|stability|global|sweep|check-invariance
  std::string params_path;
  Frame frame = Frame::original;
  double m = 1.0;
  SolverOptions solver;
  StateVector initial{1.2, 1.2, 1.2, Frame::original};
  std::optional<SweepSpec> sweep;
  std::optional<std::string> output_path;
  std::optional<std::string> report_path;
};

/// `args` excludes the program name. `--config FILE` reads `key = value`
/// lines using the long flag names as keys; flags on the command line win.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes one command. Primary output goes to config.output_path when set,
/// otherwise to `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with usage errors mapped to exit code 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foodchain::cli
