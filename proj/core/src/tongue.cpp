#include "qplift/case_studies.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qplift {

namespace {

Matrix diag2(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// rho -> M† rho M / tr(M M† rho); the normalized taste-response update.
Matrix response_update(const Matrix& m, const Matrix& rho, const char* stage) {
  Matrix out = m.adjoint() * rho * m;
  double norm = out.trace().real();
  if (norm <= 1e-14) {
    throw std::runtime_error(std::string(stage) +
                             " response annihilates the state");
  }
  return out / norm;
}

Matrix dephase(const Matrix& rho) {
  Matrix out = Matrix::Zero(2, 2);
  out(0, 0) = rho(0, 0);
  out(1, 1) = rho(1, 1);
  return out;
}

}  // namespace

TongueParams TongueParams::from_moduli_squared(double l1sq, double l2sq,
                                               double m1sq, double m2sq) {
  for (double v : {l1sq, l2sq, m1sq, m2sq}) {
    if (v < 0.0) throw std::invalid_argument("moduli squared must be nonnegative");
  }
  TongueParams p;
  p.lambda1 = std::sqrt(l1sq);
  p.lambda2 = std::sqrt(l2sq);
  p.mu1 = std::sqrt(m1sq);
  p.mu2 = std::sqrt(m2sq);
  return p;
}

void TongueParams::validate(double tol) const {
  double sugar = std::norm(lambda1) + std::norm(lambda2);
  double choc = std::norm(mu1) + std::norm(mu2);
  if (std::abs(sugar - 1.0) > tol) {
    throw std::invalid_argument("sugar amplitudes must satisfy |lambda1|^2 + |lambda2|^2 = 1");
  }
  if (std::abs(choc - 1.0) > tol) {
    throw std::invalid_argument("chocolate amplitudes must satisfy |mu1|^2 + |mu2|^2 = 1");
  }
}

Lifting tongue_lifting(const TongueParams& p) {
  p.validate();
  Matrix s = diag2(p.lambda1, p.lambda2);
  Matrix c = diag2(p.mu1, p.mu2);
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  bool objective = p.objective_readout;

  return Lifting(
      Lifting::Kind::custom, 2, {2, 2},
      [s, c, x, objective](const DensityState& rho) {
        Matrix sugar = response_update(s, rho.matrix(), "sugar");
        if (objective) sugar = dephase(sugar);
        Matrix adapted = x * sugar * x;
        Matrix chocolate = response_update(c, adapted, "chocolate");
        return unchecked_density(
            Operator({2, 2}, Eigen::kroneckerProduct(sugar, chocolate)));
      });
}

double tongue_sweet_probability_closed_form(const TongueParams& p) {
  double num = std::norm(p.lambda2) * std::norm(p.mu1);
  double den = num + std::norm(p.lambda1) * std::norm(p.mu2);
  if (den <= 1e-300) {
    throw std::invalid_argument(
        "degenerate tongue parameters: the adapted chocolate state vanishes");
  }
  return num / den;
}

ScenarioReport tongue_scenario(const TongueParams& p) {
  p.validate();

  Vector neutral(2);
  neutral << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  DensityState initial = DensityState::pure(neutral, {2});

  Vector e1 = Vector::Unit(2, 0), e2 = Vector::Unit(2, 1);
  EventSystem sugar = EventSystem::projective({"S=1", "S=2"}, {e1, e2});
  EventSystem chocolate = EventSystem::projective({"C=1", "C=2"}, {e1, e2});

  AdaptiveScenario sc(initial, tongue_lifting(p), /*system_a=*/chocolate,
                      /*system_b=*/sugar);
  JointTable table = joint_like_table(sc);

  double sweet = table.entries(0, 0) + table.entries(1, 0);
  double closed = tongue_sweet_probability_closed_form(p);
  double closed_dev = std::abs(sweet - closed);
  if (closed_dev > 1e-10) {
    throw std::runtime_error(
        "tongue pipeline disagrees with its closed form by " +
        std::to_string(closed_dev));
  }
  double neutral_sweet = std::norm(p.mu1);

  ScenarioReport r;
  r.scenario = "tongue";
  r.attributes.emplace_back("objective_readout",
                            p.objective_readout ? "true" : "false");
  r.parameters.emplace_back("lambda1_sq", std::norm(p.lambda1));
  r.parameters.emplace_back("lambda2_sq", std::norm(p.lambda2));
  r.parameters.emplace_back("mu1_sq", std::norm(p.mu1));
  r.parameters.emplace_back("mu2_sq", std::norm(p.mu2));
  if (p.lambda1.imag() != 0.0 || p.lambda2.imag() != 0.0 ||
      p.mu1.imag() != 0.0 || p.mu2.imag() != 0.0) {
    r.parameters.emplace_back("lambda1_arg", std::arg(p.lambda1));
    r.parameters.emplace_back("lambda2_arg", std::arg(p.lambda2));
    r.parameters.emplace_back("mu1_arg", std::arg(p.mu1));
    r.parameters.emplace_back("mu2_arg", std::arg(p.mu2));
  }

  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      r.add_probability("P(" + table.row_labels[j] + "," + table.col_labels[k] + ")",
                        table.entries(j, k));
    }
  }
  r.add_probability("P_sweet_after_sugar", sweet);
  r.add_probability("P_sweet_neutral", neutral_sweet);

  r.lhs = sweet;
  r.rhs = neutral_sweet;
  r.gap = sweet - neutral_sweet;
  r.diagnostics.emplace_back("closed_form_dev", closed_dev);
  r.diagnostics.emplace_back("table_total_dev", std::abs(table.total() - 1.0));
  return r;
}

}  // namespace qplift
