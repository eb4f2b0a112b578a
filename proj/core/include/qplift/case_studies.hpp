#pragma once

#include <array>
#include <vector>

#include "qplift/adaptive.hpp"
#include "qplift/density.hpp"
#include "qplift/lifting.hpp"
#include "qplift/report.hpp"

namespace qplift {

// ---------------------------------------------------------------------------
// Sequential tasting: a sugar question adapts the state the chocolate
// question is asked of.
// ---------------------------------------------------------------------------

struct TongueParams {
  Complex lambda1, lambda2;  // sugar response amplitudes, |λ1|² + |λ2|² = 1
  Complex mu1, mu2;          // chocolate response amplitudes, |μ1|² + |μ2|² = 1
  /// Ask the chocolate question of the dephased (readout) sugar state
  /// E1 ρ_S E1 + E2 ρ_S E2 instead of ρ_S itself; the two agree on every
  /// probability this scenario reports.
  bool objective_readout = false;

  static TongueParams from_moduli_squared(double l1sq, double l2sq, double m1sq,
                                          double m2sq);
  void validate(double tol = 1e-10) const;
};

/// rho -> Λ_S(rho) ⊗ Λ_C(X Λ_S(rho) X), X the basis exchange. Factor 1
/// carries the sugar outcome, factor 2 the sugar-adapted chocolate outcome.
Lifting tongue_lifting(const TongueParams& p);

/// |λ2|²|μ1|² / (|λ2|²|μ1|² + |λ1|²|μ2|²): probability that chocolate tastes
/// sweet after the sugar experience.
double tongue_sweet_probability_closed_form(const TongueParams& p);

/// Full pipeline report: the four joint probabilities, the sweet-chocolate
/// probability (checked against the closed form within 1e-10), the neutral
/// chocolate probability |μ1|², and the total-probability gap between them.
ScenarioReport tongue_scenario(const TongueParams& p);

// ---------------------------------------------------------------------------
// Lactose-glucose operon activation: detection adapts the activation state.
// ---------------------------------------------------------------------------

struct LactoseParams {
  Complex alpha, beta;  // detection amplitudes, |α|² + |β|² = 1
  double p_plus_L = 0;  // activation rate on pure lactose
  double p_plus_G = 0;  // activation rate on pure glucose
  Complex k_L{1, 0}, k_G{1, 0};  // preference weights; only the ratio matters

  static LactoseParams from_reals(double p_L, double p_plus_L, double p_plus_G,
                                  double k_ratio = 1.0);
  void validate(double tol = 1e-10) const;

  /// Activation-column operator [[√P(+|L) k_L, √P(+|G) k_G],
  ///                             [√P(-|L) k_L, √P(-|G) k_G]].
  Operator q_operator() const;
};

/// rho -> Λ_Q(Λ_D(rho)) ⊗ Λ_D(rho) with D = diag(α, β). Factor 1 carries the
/// activation outcome (+/-), factor 2 the detection outcome (L/G).
Lifting lactose_lifting(const LactoseParams& p);

/// |√P(+|L) k_L α + √P(+|G) k_G β|² over the sum with the (-) branch.
double lactose_activation_closed_form(const LactoseParams& p);

/// Pipeline report: joint probabilities, the activation probability
/// P(+|L∪G) (checked against the closed form within 1e-10), and its gap
/// against the classical composition P(+|L)P(L) + P(+|G)P(G).
ScenarioReport lactose_scenario(const LactoseParams& p);

struct PreferenceFit {
  double ratio = 0.0;          // selected root (smallest nonnegative)
  std::vector<double> roots;   // all nonnegative roots, ascending
  bool degenerate = false;     // activation independent of the ratio
};

/// Solves lactose_activation_closed_form(r) = target for the real
/// nonnegative ratio r = k_L / k_G, phases fixed at 0 (quadratic in r; both
/// branches reported). The k fields of `data` are ignored. Throws when the
/// target is infeasible; a configuration whose activation probability does
/// not depend on r (|α| or |β| = 0 with matching target) is flagged
/// degenerate.
PreferenceFit fit_preference_ratio(const LactoseParams& data, double target);

// ---------------------------------------------------------------------------
// Bayesian updating with a mental bias lifting.
// ---------------------------------------------------------------------------

struct BayesParams {
  double p_A = 0;          // prior P(A)
  double p_C_given_A = 0;  // likelihood P(C|A)
  double p_C_given_B = 0;  // likelihood P(C|B)
  DensityState bias_state;   // context state σ on the bias factor K
  Matrix bias_isometry;      // V on H ⊗ K, V†V = I within 1e-9

  /// Identity bias over a one-qubit K with σ = |0><0|: the biased update
  /// reduces to the rational one exactly.
  static BayesParams rational(double p_A, double p_C_given_A, double p_C_given_B);
  void validate(double tol = 1e-10) const;
};

/// Unit-norm prediction vector
///   √P(A)|A>(√P(C|A)|C> + √P(D|A)|D>) + √P(B)|B>(√P(C|B)|C> + √P(D|B)|D>)
/// as a pure state on H1 ⊗ H2 (dims {2, 2}).
DensityState bayes_prediction_state(const BayesParams& p);

enum class BayesObservation { C, D };

struct BayesPosterior {
  double posterior_A = 0.0;  // P(A | observation)
  double posterior_B = 0.0;
  double p_observed = 0.0;   // probability of the conditioning event
};

/// Projective conditioning of rho on I ⊗ |C><C| (or |D><D|), then reading
/// |A><A| ⊗ I. Reproduces the classical Bayes posterior exactly for
/// prediction states. Throws on a null observation event.
BayesPosterior bayes_update(const DensityState& rho, BayesObservation observed);
BayesPosterior bayes_update(const BayesParams& p, BayesObservation observed);

/// rho -> V (rho ⊗ σ) V†, the mental-bias lifting behind biased updating.
Lifting bias_lifting(const DensityState& sigma, const Matrix& v);

struct BiasedBayesReport {
  /// Biased joint-like table P̃(X, Y), X in {A, B} rows, Y in {C, D} columns.
  std::array<std::array<double, 2>, 2> joint{};
  double posterior_A = 0.0;      // biased P̃(A | observation)
  double posterior_B = 0.0;
  double p_observed = 0.0;       // P̃ of the conditioning event
  double prior_delta_A = 0.0;    // P̃(A) - P(A)
  double prior_delta_B = 0.0;    // P̃(B) - P(B)
  double gap_C = 0.0;            // P(C) - P̃(C)
  double gap_D = 0.0;            // P(D) - P̃(D)
};

/// Biased update through the lifting: ρ̃ = tr_K V (rho ⊗ σ) V†, joint-like
/// probabilities P̃(X, Y) = tr(M_X M_Y ρ̃ M_Y), posterior after the observed
/// event, prior-consistency deltas, and the total-probability gaps on the
/// evidence marginal.
BiasedBayesReport biased_bayes_update(const BayesParams& p,
                                      BayesObservation observed);

/// Scenario wrapper combining the rational and biased updates.
ScenarioReport bayes_scenario(const BayesParams& p, BayesObservation observed);

// Bias isometry library (K is one qubit).
Matrix bias_identity();
/// Swaps the evidence basis C <-> D on H2 when K is |1>; leaves H1 alone, so
/// hypothesis marginals are preserved while evidence marginals shift.
Matrix bias_conditional_mind_swap();
/// Rotates the evidence plane by `angle` when K is |1>.
Matrix bias_controlled_rotation(double angle);

}  // namespace qplift
