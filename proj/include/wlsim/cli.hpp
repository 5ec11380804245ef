#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlsim/report.hpp"

namespace wlsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitDistinguished = 1,
  kExitUsage = 2,
  kExitRuntime = 3,
};

/// Thrown by parse_cli for --help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates a command line. The subcommand is recorded as
/// "<group>-<command>" (e.g. "wl-distinguish"). Throws UsageError for
/// unknown flags, missing arguments and out-of-range values.
RunConfig parse_cli(int argc, const char* const* argv);

struct RenderedFile {
  /// Empty path means standard output.
  std::string path;
  std::string content;
};

/// Reports of an experiment-* or mpnn-simulate config, rendered in memory.
std::vector<RenderedFile> render_experiment(const RunConfig& cfg);

/// Runs a parsed config, writing files and a human-readable summary to
/// `out`. Returns the exit code.
int execute(const RunConfig& cfg, std::ostream& out);

/// parse_cli + execute with error reporting mapped onto exit codes.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wlsim
