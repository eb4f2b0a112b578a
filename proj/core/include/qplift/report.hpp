#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qplift {

/// Flat, serialization-friendly scenario result. `probabilities` entries must
/// lie in [0, 1] (values below -1e-12 or above 1 + 1e-12 are construction
/// errors; the rest is clamped). `diagnostics` carries signed quantities
/// (deltas, gaps) that are not probabilities.
struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> probabilities;
  std::vector<std::pair<std::string, double>> diagnostics;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::vector<std::pair<std::string, double>> fitted;
  std::vector<std::string> warnings;

  /// Clamps tiny numerical undershoot/overshoot, throws beyond tolerance.
  void add_probability(const std::string& name, double value);
};

}  // namespace qplift
