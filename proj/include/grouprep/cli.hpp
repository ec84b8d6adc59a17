#pragma once

#include <string>
#include <vector>

namespace grouprep::cli {

// exit codes: 0 success or positive decision, 1 negative decision,
// 2 malformed input, 3 numerical failure.
struct CommandResult {
  int exit_code = 0;
  std::string out;  // JSON payload
  std::string err;  // one-line diagnostics
};

// One row per invocation shape: the single library operation that shape
// runs. mode is the flag that selects the shape ("" for the subcommand's
// only shape). The io_cli suite checks the rows cover every documented
// operation exactly once.
struct DispatchEntry {
  const char* subcommand;
  const char* mode;
  const char* op;
};

const std::vector<DispatchEntry>& dispatch_table();

CommandResult run(const std::vector<std::string>& argv);

// Prints out/err and returns the exit code.
int main_entry(int argc, char** argv);

}  // namespace grouprep::cli
