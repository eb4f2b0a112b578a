#include "qplift_cli/errors.hpp"

namespace qplift_cli {

const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage:
      return "usage";
    case ErrorCategory::config_parse:
      return "config-parse";
    case ErrorCategory::config_io:
      return "config-io";
    case ErrorCategory::config_validation:
      return "config-validation";
    case ErrorCategory::scenario:
      return "scenario";
    case ErrorCategory::output_io:
      return "output-io";
    case ErrorCategory::internal:
      return "internal";
  }
  return "internal";
}

int category_exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage:
      return 64;
    case ErrorCategory::config_parse:
      return 65;
    case ErrorCategory::config_io:
      return 66;
    case ErrorCategory::config_validation:
      return 67;
    case ErrorCategory::scenario:
      return 68;
    case ErrorCategory::output_io:
      return 69;
    case ErrorCategory::internal:
      return 70;
  }
  return 70;
}

}  // namespace qplift_cli
