#pragma once

#include <string>
#include <vector>

#include "qplift/operator.hpp"

namespace qplift {

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double deviation = 0.0;  // worst observed deviation for this invariant
};

/// Report-only result; never throws. Constructors of DensityState and
/// EventSystem enforce the same invariants by throwing.
struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_pass() const;
  double worst_deviation() const;
  std::string to_string() const;
};

/// Density-operator invariants: hermitian, positive semidefinite
/// (eigenvalues >= -tol), unit trace.
ValidationReport validate_density(const Operator& op, double tol = 1e-10);

/// Event-system invariants: every effect hermitian and positive semidefinite,
/// effects summing to the identity.
ValidationReport validate_event_system(const std::vector<std::string>& labels,
                                       const std::vector<Operator>& effects,
                                       double tol = 1e-10);

}  // namespace qplift
