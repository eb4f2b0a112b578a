#include "qplift/case_studies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qplift {

namespace {

constexpr double kCoefTol = 1e-14;

Matrix diag2(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// rho -> M rho M† / tr(M rho M†); the detection and activation updates
// conjugate with the operator on the left.
Matrix conjugate_update(const Matrix& m, const Matrix& rho, const char* stage) {
  Matrix out = m * rho * m.adjoint();
  double norm = out.trace().real();
  if (norm <= 1e-14) {
    throw std::runtime_error(std::string(stage) +
                             " update annihilates the state");
  }
  return out / norm;
}

void require_unit_interval(double v, const char* what, double tol) {
  if (v < -tol || v > 1.0 + tol) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

LactoseParams LactoseParams::from_reals(double p_L, double p_plus_L,
                                        double p_plus_G, double k_ratio) {
  require_unit_interval(p_L, "P(L)", 1e-12);
  if (k_ratio < 0.0) {
    throw std::invalid_argument("preference ratio must be nonnegative");
  }
  LactoseParams p;
  p.alpha = std::sqrt(std::clamp(p_L, 0.0, 1.0));
  p.beta = std::sqrt(std::clamp(1.0 - p_L, 0.0, 1.0));
  p.p_plus_L = p_plus_L;
  p.p_plus_G = p_plus_G;
  p.k_L = k_ratio;
  p.k_G = 1.0;
  p.validate();
  return p;
}

void LactoseParams::validate(double tol) const {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol) {
    throw std::invalid_argument("detection amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
  }
  require_unit_interval(p_plus_L, "P(+|L)", tol);
  require_unit_interval(p_plus_G, "P(+|G)", tol);
  if (std::abs(k_L) + std::abs(k_G) <= 0.0) {
    throw std::invalid_argument("preference weights cannot both vanish");
  }
}

Operator LactoseParams::q_operator() const {
  double pl = std::clamp(p_plus_L, 0.0, 1.0);
  double pg = std::clamp(p_plus_G, 0.0, 1.0);
  Matrix q(2, 2);
  q(0, 0) = std::sqrt(pl) * k_L;
  q(0, 1) = std::sqrt(pg) * k_G;
  q(1, 0) = std::sqrt(1.0 - pl) * k_L;
  q(1, 1) = std::sqrt(1.0 - pg) * k_G;
  return Operator({2}, std::move(q));
}

Lifting lactose_lifting(const LactoseParams& p) {
  p.validate();
  Matrix d = diag2(p.alpha, p.beta);
  Matrix q = p.q_operator().matrix();

  return Lifting(
      Lifting::Kind::custom, 2, {2, 2},
      [d, q](const DensityState& rho) {
        Matrix detection = conjugate_update(d, rho.matrix(), "detection");
        Matrix activation = conjugate_update(q, detection, "activation");
        return unchecked_density(
            Operator({2, 2}, Eigen::kroneckerProduct(activation, detection)));
      });
}

double lactose_activation_closed_form(const LactoseParams& p) {
  double pl = std::clamp(p.p_plus_L, 0.0, 1.0);
  double pg = std::clamp(p.p_plus_G, 0.0, 1.0);
  Complex plus = std::sqrt(pl) * p.k_L * p.alpha + std::sqrt(pg) * p.k_G * p.beta;
  Complex minus = std::sqrt(1.0 - pl) * p.k_L * p.alpha +
                  std::sqrt(1.0 - pg) * p.k_G * p.beta;
  double den = std::norm(plus) + std::norm(minus);
  if (den <= 1e-300) {
    throw std::invalid_argument(
        "degenerate lactose parameters: the activation state vanishes");
  }
  return std::norm(plus) / den;
}

ScenarioReport lactose_scenario(const LactoseParams& p) {
  p.validate();

  Vector neutral(2);
  neutral << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  DensityState initial = DensityState::pure(neutral, {2});

  Vector e1 = Vector::Unit(2, 0), e2 = Vector::Unit(2, 1);
  EventSystem detection = EventSystem::projective({"L", "G"}, {e1, e2});
  EventSystem activation = EventSystem::projective({"+", "-"}, {e1, e2});

  AdaptiveScenario sc(initial, lactose_lifting(p), /*system_a=*/detection,
                      /*system_b=*/activation);
  JointTable table = joint_like_table(sc);

  double adaptive = table.entries(0, 0) + table.entries(0, 1);
  double closed = lactose_activation_closed_form(p);
  double closed_dev = std::abs(adaptive - closed);
  if (closed_dev > 1e-10) {
    throw std::runtime_error(
        "lactose pipeline disagrees with its closed form by " +
        std::to_string(closed_dev));
  }

  double p_L = std::norm(p.alpha), p_G = std::norm(p.beta);
  GapReport law = total_probability_gap(
      adaptive, {std::clamp(p.p_plus_L, 0.0, 1.0), std::clamp(p.p_plus_G, 0.0, 1.0)},
      {p_L, p_G});

  ScenarioReport r;
  r.scenario = "lactose";
  r.parameters.emplace_back("p_L", p_L);
  r.parameters.emplace_back("p_G", p_G);
  r.parameters.emplace_back("p_plus_L", p.p_plus_L);
  r.parameters.emplace_back("p_plus_G", p.p_plus_G);
  r.parameters.emplace_back("k_L_abs", std::abs(p.k_L));
  r.parameters.emplace_back("k_G_abs", std::abs(p.k_G));
  if (p.alpha.imag() != 0.0 || p.beta.imag() != 0.0 || p.k_L.imag() != 0.0 ||
      p.k_G.imag() != 0.0) {
    r.parameters.emplace_back("alpha_arg", std::arg(p.alpha));
    r.parameters.emplace_back("beta_arg", std::arg(p.beta));
    r.parameters.emplace_back("k_L_arg", std::arg(p.k_L));
    r.parameters.emplace_back("k_G_arg", std::arg(p.k_G));
  }

  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      r.add_probability("P(" + table.row_labels[j] + "," + table.col_labels[k] + ")",
                        table.entries(j, k));
    }
  }
  r.add_probability("P_plus_adaptive", adaptive);
  r.add_probability("P_plus_classical", law.rhs);

  r.lhs = law.lhs;
  r.rhs = law.rhs;
  r.gap = law.gap;
  r.diagnostics.emplace_back("closed_form_dev", closed_dev);
  r.diagnostics.emplace_back("table_total_dev", std::abs(table.total() - 1.0));
  return r;
}

PreferenceFit fit_preference_ratio(const LactoseParams& data, double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("target must lie strictly between 0 and 1");
  }
  data.validate();

  double pl = std::clamp(data.p_plus_L, 0.0, 1.0);
  double pg = std::clamp(data.p_plus_G, 0.0, 1.0);
  double asq = std::norm(data.alpha), bsq = std::norm(data.beta);
  double cross = (data.alpha * std::conj(data.beta)).real();

  // With k_L = r, k_G = 1 and target t, the closed form rearranges to
  //   A r^2 + B r + C = 0,
  // A = |alpha|^2 (P(+|L) - t), C = |beta|^2 (P(+|G) - t),
  // B = 2 Re(alpha conj(beta)) [(1-t)sqrt(P(+|L)P(+|G)) - t sqrt(P(-|L)P(-|G))].
  double a = asq * (pl - target);
  double c = bsq * (pg - target);
  double b = 2.0 * cross *
             ((1.0 - target) * std::sqrt(pl * pg) -
              target * std::sqrt((1.0 - pl) * (1.0 - pg)));

  auto feasible = [&](double r) {
    LactoseParams trial = data;
    trial.k_L = r;
    trial.k_G = 1.0;
    try {
      return std::abs(lactose_activation_closed_form(trial) - target) <= 1e-9;
    } catch (const std::invalid_argument&) {
      return false;
    }
  };

  PreferenceFit fit;
  if (std::abs(a) <= kCoefTol && std::abs(b) <= kCoefTol && std::abs(c) <= kCoefTol) {
    // The activation probability does not depend on the ratio.
    fit.degenerate = true;
    fit.ratio = 1.0;
    if (!feasible(fit.ratio)) {
      throw std::invalid_argument("target infeasible for given data");
    }
    return fit;
  }

  std::vector<double> candidates;
  if (std::abs(a) <= kCoefTol) {
    if (std::abs(b) > kCoefTol) candidates.push_back(-c / b);
  } else {
    double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      // Stable quadratic roots; avoids cancellation when |b| dominates.
      double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
      candidates.push_back(q / a);
      if (std::abs(q) > kCoefTol) candidates.push_back(c / q);
    }
  }

  for (double r : candidates) {
    if (r < -1e-12) continue;
    r = std::max(0.0, r);
    if (!feasible(r)) continue;
    bool duplicate = false;
    for (double seen : fit.roots) {
      if (std::abs(seen - r) <= 1e-12 * std::max(1.0, std::abs(r))) duplicate = true;
    }
    if (!duplicate) fit.roots.push_back(r);
  }
  std::sort(fit.roots.begin(), fit.roots.end());

  if (fit.roots.empty()) {
    throw std::invalid_argument("target infeasible for given data");
  }
  fit.ratio = fit.roots.front();
  return fit;
}

}  // namespace qplift
