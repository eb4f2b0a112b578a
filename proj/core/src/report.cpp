#include "qplift/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace qplift {

void ScenarioReport::add_probability(const std::string& name, double value) {
  if (value < -1e-12 || value > 1.0 + 1e-12) {
    throw std::runtime_error("probability out of range: " + name + " = " +
                             std::to_string(value));
  }
  probabilities.emplace_back(name, std::clamp(value, 0.0, 1.0));
}

}  // namespace qplift
