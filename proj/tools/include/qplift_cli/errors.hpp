#pragma once

#include <stdexcept>
#include <string>

namespace qplift_cli {

/// Failure categories reported as `error: <category>: <message>` on stderr,
/// one line, each with its own exit code (sysexits-flavored).
enum class ErrorCategory {
  usage,              // 64: bad flags, missing subcommand
  config_parse,       // 65: config text is not well-formed
  config_io,          // 66: config file unreadable
  config_validation,  // 67: config well-formed but invalid for the scenario
  scenario,           // 68: the pipeline itself rejected the inputs
  output_io,          // 69: report destination unwritable
  internal,           // 70: invariant failure inside the tool
};

const char* category_name(ErrorCategory c);
int category_exit_code(ErrorCategory c);

class CliError : public std::runtime_error {
 public:
  CliError(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace qplift_cli
