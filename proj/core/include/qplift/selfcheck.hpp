#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qplift {

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst deviation observed, when meaningful
  std::string detail;
};

/// Seeded randomized invariant suites over every module; used by the CLI
/// `check` subcommand. Each suite is independent of the others.
std::vector<CheckResult> run_selfchecks(std::uint64_t seed);

}  // namespace qplift
