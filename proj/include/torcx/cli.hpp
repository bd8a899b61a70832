#pragma once

#include "torcx/config.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torcx {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitCompatibility = 3,
  kExitNoWitness = 4,
  kExitClosedness = 5,
};

struct RunOptions {
  int threads = 0;
  std::optional<bool> exact;          // --exact / --float override the config
  std::optional<std::uint64_t> seed;  // --seed overrides the config
  std::string f_path;                 // solve: right-hand side file
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::map<std::string, std::string> files;  // extra artifacts, name -> contents
  std::string summary;
};

CommandResult cmd_analyze(const Config& cfg, const RunOptions& opt);
CommandResult cmd_solve(const Config& cfg, const RunOptions& opt);
CommandResult cmd_witness(const Config& cfg, const RunOptions& opt);
CommandResult cmd_reduce(const Config& cfg, const RunOptions& opt);

/// torcx <analyze|solve|witness|reduce> --config PATH [--out DIR] [--threads N]
///       [--exact|--float] [--seed S] [--f PATH]. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torcx
