#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qplift/density.hpp"
#include "qplift/event_system.hpp"
#include "qplift/lifting.hpp"

namespace qplift {

struct GapReport {
  double lhs = 0.0;  // the probability under test
  double rhs = 0.0;  // sum_k conditional_k * prior_k
  double gap = 0.0;  // lhs - rhs
};

/// Classical total-probability composition against a target probability.
/// Priors must be nonnegative and sum to 1 within 1e-9.
GapReport total_probability_gap(double target,
                                const std::vector<double>& conditionals,
                                const std::vector<double>& priors);

/// Outcome table p_jk, rows indexed by the second measurement (labels b_j),
/// columns by the first (labels a_k). Entries below -1e-12 are rejected;
/// tiny negatives are clamped to zero.
struct JointTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Eigen::MatrixXd entries;
  /// Filled by sequential_joint_table: sum_k p_jk - tr(rho E_j) per row.
  /// Vanishes when every E_j commutes with every F_k.
  std::vector<double> row_mismatch;

  double total() const;
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
};

using EffectCombiner = std::function<Operator(const Operator&, const Operator&)>;

/// One adaptive-measurement setup: initial state, lifting, event system A
/// ({a_k, F_k}, read off factor 2 of the lifted state) and event system B
/// ({b_j, E_j}, read off factor 1). Which factor carries the adapted stage is
/// the lifting's business, not this class's. The default combiner is the
/// tensor product E_j ⊗ F_k; a custom combiner may realize any other pairing.
class AdaptiveScenario {
 public:
  AdaptiveScenario(DensityState initial, Lifting lifting, EventSystem system_a,
                   EventSystem system_b);
  AdaptiveScenario(DensityState initial, Lifting lifting, EventSystem system_a,
                   EventSystem system_b, EffectCombiner combiner);

  const DensityState& initial_state() const { return initial_; }
  const Lifting& lifting() const { return lifting_; }
  const EventSystem& system_a() const { return system_a_; }
  const EventSystem& system_b() const { return system_b_; }
  bool tensor_combiner() const { return tensor_combiner_; }

  /// combiner(E_j, F_k); output dimension must match the lifted state.
  Operator combined_effect(int j, int k) const;

 private:
  DensityState initial_;
  Lifting lifting_;
  EventSystem system_a_;
  EventSystem system_b_;
  EffectCombiner combiner_;
  bool tensor_combiner_;
};

/// rho => E*rho => tr_2 E*rho. Returns the lifted state and its factor-1
/// marginal (the adapted state the second question is asked of).
std::pair<DensityState, DensityState> adaptive_evolve(const AdaptiveScenario& sc);

/// Joint-like probability P(a_k, b_j) = tr( combiner(E_j, F_k) E*rho ).
double joint_like_probability(const AdaptiveScenario& sc, int j, int k);

/// Full table of joint-like probabilities; rows b_j, columns a_k. Sums to 1
/// for a tensor combiner with complete event systems.
JointTable joint_like_table(const AdaptiveScenario& sc);

/// Sequential two-measurement table p_jk = tr( √F_k rho √F_k E_j ), which is
/// tr(rho F_k E_j F_k) for projective F. Column sums reproduce tr(rho F_k);
/// row sums generally fail to reproduce tr(rho E_j) unless the systems
/// commute, and the per-row mismatch is recorded on the result.
JointTable sequential_joint_table(const DensityState& rho,
                                  const EventSystem& first,
                                  const EventSystem& second);

}  // namespace qplift
