#include "qplift/case_studies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qplift/channels.hpp"

namespace qplift {

namespace {

void require_unit_interval(double v, const char* what, double tol) {
  if (v < -tol || v > 1.0 + tol) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

Matrix basis_projector(int which) {
  Matrix m = Matrix::Zero(2, 2);
  m(which, which) = 1.0;
  return m;
}

// M_A = |A><A| ⊗ I, M_B, and the evidence projectors M_C = I ⊗ |C><C|, M_D,
// all on the prediction space C² ⊗ C².
Operator hypothesis_projector(int which) {
  return Operator({2, 2}, Eigen::kroneckerProduct(basis_projector(which),
                                                  Matrix::Identity(2, 2)));
}

Operator evidence_projector(int which) {
  return Operator({2, 2}, Eigen::kroneckerProduct(Matrix::Identity(2, 2),
                                                  basis_projector(which)));
}

}  // namespace

BayesParams BayesParams::rational(double p_A, double p_C_given_A,
                                  double p_C_given_B) {
  Vector ground = Vector::Unit(2, 0);
  BayesParams p{p_A, p_C_given_A, p_C_given_B,
                DensityState::pure(ground, {2}), bias_identity()};
  p.validate();
  return p;
}

void BayesParams::validate(double tol) const {
  require_unit_interval(p_A, "P(A)", tol);
  require_unit_interval(p_C_given_A, "P(C|A)", tol);
  require_unit_interval(p_C_given_B, "P(C|B)", tol);
  int dk = bias_state.total_dim();
  if (bias_isometry.rows() != bias_isometry.cols() ||
      bias_isometry.rows() != 4 * dk) {
    throw std::invalid_argument(
        "bias operator must be square on the prediction space tensor the bias factor");
  }
  double dev = (bias_isometry.adjoint() * bias_isometry -
                Matrix::Identity(bias_isometry.cols(), bias_isometry.cols()))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > 1e-9) {
    throw std::invalid_argument("bias operator must be an isometry (deviation " +
                                std::to_string(dev) + ")");
  }
}

DensityState bayes_prediction_state(const BayesParams& p) {
  require_unit_interval(p.p_A, "P(A)", 1e-10);
  require_unit_interval(p.p_C_given_A, "P(C|A)", 1e-10);
  require_unit_interval(p.p_C_given_B, "P(C|B)", 1e-10);
  double pa = std::clamp(p.p_A, 0.0, 1.0);
  double pca = std::clamp(p.p_C_given_A, 0.0, 1.0);
  double pcb = std::clamp(p.p_C_given_B, 0.0, 1.0);

  Vector phi(4);
  phi(0) = std::sqrt(pa) * std::sqrt(pca);
  phi(1) = std::sqrt(pa) * std::sqrt(1.0 - pca);
  phi(2) = std::sqrt(1.0 - pa) * std::sqrt(pcb);
  phi(3) = std::sqrt(1.0 - pa) * std::sqrt(1.0 - pcb);
  return DensityState::pure(phi, {2, 2}, /*norm_tol=*/1e-12);
}

BayesPosterior bayes_update(const DensityState& rho, BayesObservation observed) {
  Operator m = evidence_projector(observed == BayesObservation::C ? 0 : 1);
  double p_obs = real_expectation(rho, m);
  DensityState conditioned = luders_conditional_state(rho, m);
  BayesPosterior post;
  post.p_observed = p_obs;
  post.posterior_A = real_expectation(conditioned, hypothesis_projector(0));
  post.posterior_B = real_expectation(conditioned, hypothesis_projector(1));
  return post;
}

BayesPosterior bayes_update(const BayesParams& p, BayesObservation observed) {
  return bayes_update(bayes_prediction_state(p), observed);
}

Lifting bias_lifting(const DensityState& sigma, const Matrix& v) {
  int dk = sigma.total_dim();
  if (v.rows() != v.cols() || v.rows() % dk != 0 || v.rows() / dk < 1) {
    throw std::invalid_argument(
        "bias operator dimensions are incompatible with the bias state");
  }
  int dh = static_cast<int>(v.rows()) / dk;
  double dev =
      (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-9) {
    throw std::invalid_argument("bias operator must be an isometry (deviation " +
                                std::to_string(dev) + ")");
  }

  Matrix sig = sigma.matrix();
  return Lifting(Lifting::Kind::custom, dh, {dh, dk},
                 [v, sig, dh, dk](const DensityState& rho) {
                   Matrix joint = v *
                                  Eigen::kroneckerProduct(rho.matrix(), sig) *
                                  v.adjoint();
                   return unchecked_density(Operator({dh, dk}, std::move(joint)));
                 });
}

BiasedBayesReport biased_bayes_update(const BayesParams& p,
                                      BayesObservation observed) {
  p.validate();
  DensityState rho = bayes_prediction_state(p);
  Lifting bias = bias_lifting(p.bias_state, p.bias_isometry);
  DensityState lifted = bias.apply(rho);
  DensityState biased_flat = trace_out_factor(lifted, 1);
  DensityState biased =
      unchecked_density(biased_flat.op().reshaped({2, 2}));

  Operator mh[2] = {hypothesis_projector(0), hypothesis_projector(1)};
  Operator me[2] = {evidence_projector(0), evidence_projector(1)};

  BiasedBayesReport out;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      Matrix sandwiched = me[y].matrix() * biased.matrix() * me[y].matrix();
      double val =
          (sandwiched.transpose().cwiseProduct(mh[x].matrix())).sum().real();
      out.joint[x][y] = std::max(0.0, val);
    }
  }

  int obs = observed == BayesObservation::C ? 0 : 1;
  out.p_observed = real_expectation(biased, me[obs]);
  if (out.p_observed <= 1e-14) {
    throw std::runtime_error("conditioning on a null observation event");
  }
  out.posterior_A = out.joint[0][obs] / out.p_observed;
  out.posterior_B = out.joint[1][obs] / out.p_observed;

  double pa = std::clamp(p.p_A, 0.0, 1.0);
  out.prior_delta_A = (out.joint[0][0] + out.joint[0][1]) - pa;
  out.prior_delta_B = (out.joint[1][0] + out.joint[1][1]) - (1.0 - pa);

  double p_C = real_expectation(rho, me[0]);
  double p_D = real_expectation(rho, me[1]);
  out.gap_C = p_C - (out.joint[0][0] + out.joint[1][0]);
  out.gap_D = p_D - (out.joint[0][1] + out.joint[1][1]);
  return out;
}

ScenarioReport bayes_scenario(const BayesParams& p, BayesObservation observed) {
  BayesPosterior rational = bayes_update(p, observed);
  BiasedBayesReport biased = biased_bayes_update(p, observed);

  double pa = std::clamp(p.p_A, 0.0, 1.0);
  double p_C = p.p_C_given_A * pa + p.p_C_given_B * (1.0 - pa);
  double biased_C = biased.joint[0][0] + biased.joint[1][0];
  double biased_D = biased.joint[0][1] + biased.joint[1][1];

  ScenarioReport r;
  r.scenario = "bayes";
  r.attributes.emplace_back("observed",
                            observed == BayesObservation::C ? "C" : "D");
  r.parameters.emplace_back("p_A", p.p_A);
  r.parameters.emplace_back("p_C_given_A", p.p_C_given_A);
  r.parameters.emplace_back("p_C_given_B", p.p_C_given_B);

  r.add_probability("posterior_A_rational", rational.posterior_A);
  r.add_probability("posterior_A_biased", biased.posterior_A);
  r.add_probability("posterior_B_biased", biased.posterior_B);
  r.add_probability("p_observed_rational", rational.p_observed);
  r.add_probability("p_observed_biased", biased.p_observed);
  r.add_probability("joint_AC", biased.joint[0][0]);
  r.add_probability("joint_AD", biased.joint[0][1]);
  r.add_probability("joint_BC", biased.joint[1][0]);
  r.add_probability("joint_BD", biased.joint[1][1]);
  r.add_probability("P_C_rational", p_C);
  r.add_probability("P_C_biased", biased_C);

  r.diagnostics.emplace_back("prior_delta_A", biased.prior_delta_A);
  r.diagnostics.emplace_back("prior_delta_B", biased.prior_delta_B);
  r.diagnostics.emplace_back("gap_C", biased.gap_C);
  r.diagnostics.emplace_back("gap_D", biased.gap_D);
  r.diagnostics.emplace_back("posterior_shift",
                             biased.posterior_A - rational.posterior_A);

  if (observed == BayesObservation::C) {
    r.lhs = p_C;
    r.rhs = biased_C;
    r.gap = biased.gap_C;
  } else {
    r.lhs = 1.0 - p_C;
    r.rhs = biased_D;
    r.gap = biased.gap_D;
  }
  return r;
}

Matrix bias_identity() { return Matrix::Identity(8, 8); }

Matrix bias_conditional_mind_swap() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  Matrix swap_h = Eigen::kroneckerProduct(Matrix::Identity(2, 2), x);
  return Eigen::kroneckerProduct(Matrix::Identity(4, 4), basis_projector(0)) +
         Eigen::kroneckerProduct(swap_h, basis_projector(1));
}

Matrix bias_controlled_rotation(double angle) {
  Matrix rot(2, 2);
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  Matrix rot_h = Eigen::kroneckerProduct(Matrix::Identity(2, 2), rot);
  return Eigen::kroneckerProduct(Matrix::Identity(4, 4), basis_projector(0)) +
         Eigen::kroneckerProduct(rot_h, basis_projector(1));
}

}  // namespace qplift
