#include "qplift/adaptive.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qplift {

namespace {

constexpr double kEntryFloor = -1e-12;

double clamp_entry(double p, const char* what) {
  if (p < kEntryFloor) {
    throw std::runtime_error(std::string(what) + " produced a negative entry " +
                             std::to_string(p));
  }
  return std::max(0.0, p);
}

Matrix hermitian_sqrt(const Operator& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(f.matrix());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on an effect");
  }
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

GapReport total_probability_gap(double target,
                                const std::vector<double>& conditionals,
                                const std::vector<double>& priors) {
  if (conditionals.size() != priors.size() || priors.empty()) {
    throw std::invalid_argument("conditionals and priors must be matching nonempty lists");
  }
  double sum = 0.0;
  double rhs = 0.0;
  for (std::size_t k = 0; k < priors.size(); ++k) {
    if (priors[k] < -1e-12) {
      throw std::invalid_argument("priors must be nonnegative");
    }
    sum += priors[k];
    rhs += conditionals[k] * priors[k];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("priors must sum to 1 (got " + std::to_string(sum) + ")");
  }
  return {target, rhs, target - rhs};
}

double JointTable::total() const { return entries.sum(); }

std::vector<double> JointTable::row_sums() const {
  Eigen::VectorXd s = entries.rowwise().sum();
  return {s.data(), s.data() + s.size()};
}

std::vector<double> JointTable::col_sums() const {
  Eigen::VectorXd s = entries.colwise().sum();
  return {s.data(), s.data() + s.size()};
}

AdaptiveScenario::AdaptiveScenario(DensityState initial, Lifting lifting,
                                   EventSystem system_a, EventSystem system_b)
    : AdaptiveScenario(std::move(initial), std::move(lifting),
                       std::move(system_a), std::move(system_b),
                       EffectCombiner{}) {}

AdaptiveScenario::AdaptiveScenario(DensityState initial, Lifting lifting,
                                   EventSystem system_a, EventSystem system_b,
                                   EffectCombiner combiner)
    : initial_(std::move(initial)),
      lifting_(std::move(lifting)),
      system_a_(std::move(system_a)),
      system_b_(std::move(system_b)),
      combiner_(std::move(combiner)),
      tensor_combiner_(!combiner_) {
  if (lifting_.input_dim() != initial_.total_dim()) {
    throw std::invalid_argument("lifting input dimension does not match the initial state");
  }
  auto [d1, d2] = lifting_.output_dims();
  if (tensor_combiner_) {
    if (system_b_.dim() != d1 || system_a_.dim() != d2) {
      throw std::invalid_argument(
          "tensor combiner needs system B on the lifted factor 1 and system A on factor 2");
    }
  } else {
    // Probe once so a mis-sized combiner fails at construction.
    Operator probe = combiner_(system_b_.effect(0), system_a_.effect(0));
    if (probe.total_dim() != d1 * d2) {
      throw std::invalid_argument("effect combiner output does not match the lifted dimension");
    }
  }
}

Operator AdaptiveScenario::combined_effect(int j, int k) const {
  if (j < 0 || j >= static_cast<int>(system_b_.size()) || k < 0 ||
      k >= static_cast<int>(system_a_.size())) {
    throw std::out_of_range("event index out of range");
  }
  Operator combined = tensor_combiner_
                          ? tensor(system_b_.effect(j), system_a_.effect(k))
                          : combiner_(system_b_.effect(j), system_a_.effect(k));
  auto [d1, d2] = lifting_.output_dims();
  if (combined.total_dim() != d1 * d2) {
    throw std::runtime_error("effect combiner output does not match the lifted dimension");
  }
  return combined;
}

std::pair<DensityState, DensityState> adaptive_evolve(const AdaptiveScenario& sc) {
  auto [d1, d2] = sc.lifting().output_dims();
  DensityState lifted = sc.lifting().apply(sc.initial_state());
  DensityState shaped = unchecked_density(lifted.op().reshaped({d1, d2}));
  DensityState marginal = trace_out_factor(shaped, 1);
  return {std::move(shaped), std::move(marginal)};
}

double joint_like_probability(const AdaptiveScenario& sc, int j, int k) {
  DensityState lifted = adaptive_evolve(sc).first;
  return clamp_entry(real_expectation(lifted, sc.combined_effect(j, k)),
                     "joint-like probability");
}

JointTable joint_like_table(const AdaptiveScenario& sc) {
  auto [lifted, marginal1] = adaptive_evolve(sc);

  JointTable t;
  t.row_labels = sc.system_b().labels();
  t.col_labels = sc.system_a().labels();
  int rows = static_cast<int>(t.row_labels.size());
  int cols = static_cast<int>(t.col_labels.size());
  t.entries.resize(rows, cols);
  for (int j = 0; j < rows; ++j) {
    for (int k = 0; k < cols; ++k) {
      t.entries(j, k) = clamp_entry(
          real_expectation(lifted, sc.combined_effect(j, k)), "joint-like table");
    }
  }

  // Row-sum consistency against the factor-1 marginal. Identically zero for
  // the tensor combiner; meaningful for custom pairings. Undefined (NaN) when
  // system B does not live on factor 1.
  t.row_mismatch.assign(rows, std::numeric_limits<double>::quiet_NaN());
  if (sc.system_b().dim() == marginal1.total_dim()) {
    auto sums = t.row_sums();
    for (int j = 0; j < rows; ++j) {
      t.row_mismatch[j] =
          sums[j] - real_expectation(marginal1, sc.system_b().effect(j));
    }
  }
  return t;
}

JointTable sequential_joint_table(const DensityState& rho,
                                  const EventSystem& first,
                                  const EventSystem& second) {
  if (first.dim() != rho.total_dim() || second.dim() != rho.total_dim()) {
    throw std::invalid_argument("event systems must act on the state space");
  }

  JointTable t;
  t.row_labels = second.labels();
  t.col_labels = first.labels();
  int rows = static_cast<int>(t.row_labels.size());
  int cols = static_cast<int>(t.col_labels.size());
  t.entries.resize(rows, cols);

  for (int k = 0; k < cols; ++k) {
    Matrix root = hermitian_sqrt(first.effect(k));
    Matrix conditioned = root * rho.matrix() * root;
    for (int j = 0; j < rows; ++j) {
      double p = (conditioned.transpose().cwiseProduct(second.effect(j).matrix()))
                     .sum()
                     .real();
      t.entries(j, k) = clamp_entry(p, "sequential table");
    }
  }

  t.row_mismatch.resize(rows);
  auto sums = t.row_sums();
  for (int j = 0; j < rows; ++j) {
    t.row_mismatch[j] = sums[j] - real_expectation(rho, second.effect(j));
  }
  return t;
}

}  // namespace qplift
