#include "qplift/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qplift {

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.pass; });
}

double ValidationReport::worst_deviation() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.deviation);
  return worst;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "pass" : "FAIL") << "  " << c.name
        << "  (deviation " << c.deviation << ")\n";
  }
  return out.str();
}

ValidationReport validate_density(const Operator& op, double tol) {
  ValidationReport report;

  double herm = op.hermiticity_defect();
  report.checks.push_back({"hermitian", herm <= tol, herm});

  // Positivity of the hermitian part; for a genuinely non-hermitian matrix
  // the hermitian check above already failed.
  Matrix h = (op.matrix() + op.matrix().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues().minCoeff();
  double neg = std::max(0.0, -min_eig);
  report.checks.push_back({"positive semidefinite", neg <= tol, neg});

  double trace_dev = std::abs(op.matrix().trace() - Complex(1.0, 0.0));
  report.checks.push_back({"unit trace", trace_dev <= tol, trace_dev});

  return report;
}

ValidationReport validate_event_system(const std::vector<std::string>& labels,
                                       const std::vector<Operator>& effects,
                                       double tol) {
  ValidationReport report;
  if (effects.empty() || labels.size() != effects.size()) {
    report.checks.push_back({"one label per effect", false, 0.0});
    return report;
  }

  int n = effects.front().total_dim();
  bool dims_ok = true;
  for (const auto& e : effects) dims_ok = dims_ok && e.total_dim() == n;
  report.checks.push_back({"common dimension", dims_ok, 0.0});
  if (!dims_ok) return report;

  for (std::size_t i = 0; i < effects.size(); ++i) {
    double herm = effects[i].hermiticity_defect();
    report.checks.push_back({"effect '" + labels[i] + "' hermitian", herm <= tol, herm});

    Matrix h = (effects[i].matrix() + effects[i].matrix().adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    double neg = std::max(0.0, -es.eigenvalues().minCoeff());
    report.checks.push_back(
        {"effect '" + labels[i] + "' positive semidefinite", neg <= tol, neg});
  }

  Matrix sum = Matrix::Zero(n, n);
  for (const auto& e : effects) sum += e.matrix();
  double completeness = (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  report.checks.push_back({"effects sum to identity", completeness <= tol, completeness});

  return report;
}

}  // namespace qplift
