#ifndef FOLIACOH_COMMANDS_HPP
#define FOLIACOH_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "foliacoh/io.hpp"

namespace foliacoh::cli {

enum ExitCode : int { kOk = 0, kVerdictFailure = 1, kInvalidInput = 2, kInconclusive = 3 };

std::string status_name(int exit_code);

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "cohomology", "equivariant", "spectral", "module",
                                              "strata",   "morse",      "polytope",    "fixtures"};
  return names;
}

struct CommandOptions {
  std::string command;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<int> max_degree;
  std::string filter;
  std::string format = "json";
  std::string fixtures_action = "run";  // list | run
  std::string fixture_dir = FOLIACOH_FIXTURE_DIR;
};

struct CommandResult {
  int exit_code = kOk;
  io::Json document;
  std::string text;  // rendering in the requested format
};

/// Runs one subcommand. Never throws: failures become exit codes plus diagnostics.
CommandResult run_command(const CommandOptions& options);

/// Same, on an already parsed document; `raw` is hashed into the result.
io::Json run_on_document(const std::string& command, const io::InputDocument& doc, const io::Json& raw,
                         std::optional<int> max_degree);

/// Plain-text rendering of a result document.
std::string render_text(const io::Json& result);

/// Every key of `expected` is present in `actual` with a matching value (objects
/// recursively, arrays elementwise). Returns the first mismatch path, if any.
std::optional<std::string> subset_mismatch(const io::Json& expected, const io::Json& actual,
                                           const std::string& path = "");

}  // namespace foliacoh::cli

#endif  // FOLIACOH_COMMANDS_HPP
