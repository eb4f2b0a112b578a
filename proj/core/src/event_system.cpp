#include "qplift/event_system.hpp"

#include <stdexcept>

#include "qplift/validation.hpp"

namespace qplift {

EventSystem::EventSystem(std::vector<std::string> labels,
                         std::vector<Operator> effects, double tol)
    : labels_(std::move(labels)), effects_(std::move(effects)) {
  ValidationReport report = validate_event_system(labels_, effects_, tol);
  if (!report.all_pass()) {
    throw std::invalid_argument("not an event system:\n" + report.to_string());
  }
}

EventSystem EventSystem::projective(std::vector<std::string> labels,
                                    const std::vector<Vector>& kets) {
  std::vector<Operator> effects;
  effects.reserve(kets.size());
  for (const auto& k : kets) {
    Matrix m = k * k.adjoint();
    effects.emplace_back(std::vector<int>{static_cast<int>(k.size())}, std::move(m));
  }
  return EventSystem(std::move(labels), std::move(effects));
}

}  // namespace qplift
