#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace nhsym::cli {

enum ExitCode { kOk = 0, kInvalidConfig = 1, kUnconverged = 2 };

struct RunOverrides {
  std::vector<Task> tasks;  // replaces the config's task list when nonempty
  std::optional<int> cutoff;
  std::optional<std::string> output_dir;
};

// Applies overrides and re-checks what they can break (cutoff range, tasks).
void apply_overrides(RunConfig& config, const RunOverrides& overrides);

struct RunResult {
  int exit_code = kOk;
  std::map<std::string, std::string> files;  // name -> content, in the output directory
  std::vector<std::string> warnings;
};

// Computes every task; nothing touches the disk.
RunResult execute(const RunConfig& config, std::ostream& log);
void write_outputs(const RunConfig& config, const RunResult& result);

void list_presets(std::ostream& os);

// Entry point shared by the executable and the tests.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nhsym::cli
