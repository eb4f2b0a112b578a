#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <qplift/report.hpp>

#include "qplift_cli/config.hpp"

namespace qplift_cli {

/// One evaluation of the config's scenario at its current parameter map.
qplift::ScenarioReport run_single(const ScenarioConfig& config);

/// Sweep-aware: one report per grid point in declared order, or a single
/// report when no sweep is configured.
std::vector<qplift::ScenarioReport> run(const ScenarioConfig& config);

/// Inclusive grid for a sweep; geometric spacing when log-scaled.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// Lactose preference-ratio fit, then the scenario at the fitted ratio.
qplift::ScenarioReport run_fit(const ScenarioConfig& config, double target);

/// The three built-in case studies with their canonical inputs.
std::vector<qplift::ScenarioReport> demo_reports();

/// Deterministic, human-readable rendering of demo_reports().
std::string demo_text();

struct CheckOutcome {
  std::string text;
  int failed = 0;
  int total = 0;
};

/// Runs the seeded invariant suites and formats one line per suite.
CheckOutcome run_check(std::uint64_t seed);

}  // namespace qplift_cli
