#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyprem/errors.hpp"
#include "levyprem_cli/run_config.hpp"

namespace levyprem::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUnknown = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitFeasibility = 4,
  kExitConvergence = 5,
  kExitNumerical = 6,
};

int exit_code_for(ErrorFamily family);

/// Files produced by a command. Nothing touches the output directory until
/// commit(), which stages every file before renaming any into place.
class OutputSet {
 public:
  void add(const std::string& name, std::string content);
  const std::map<std::string, std::string>& files() const { return files_; }
  void commit(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

struct CommandOutput {
  OutputSet files;
  nlohmann::json summary;
  /// Human-readable report printed to stdout.
  std::string text;
  /// Non-zero when the command completed but flags a problem (e.g. a fit
  /// that did not converge).
  int exit_code = kExitOk;
};

/// Annual log equity premium ln(1.0681) - ln(1.00987) from the real
/// equity and risk-free returns quoted for 1900-2018.
double paper_target_premium();

std::vector<double> load_input(const RunConfig& config);

CommandOutput cmd_fit(const RunConfig& config);
CommandOutput cmd_validate(const RunConfig& config);
CommandOutput cmd_calibrate(const RunConfig& config);
CommandOutput cmd_simulate(const RunConfig& config);
CommandOutput cmd_repro(const RunConfig& config);

CommandOutput run_command(const RunConfig& config);

/// Full command line handling (args exclude the program name). Returns the
/// process exit code; nothing is written under --out on failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levyprem::cli
