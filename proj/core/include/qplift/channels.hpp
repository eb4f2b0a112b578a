#pragma once

#include <vector>

#include "qplift/density.hpp"
#include "qplift/event_system.hpp"
#include "qplift/operator.hpp"
#include "qplift/projection.hpp"

namespace qplift {

/// Completely positive map rho -> sum_i K_i rho K_i†. The Kraus family must
/// satisfy sum K_i† K_i = I (trace preserving) or sum K_i† K_i <= I, in which
/// case the channel is flagged sub-normalized and apply_kraus renormalizes.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Operator> kraus_ops, double tol = 1e-9);

  const std::vector<Operator>& kraus_ops() const { return ops_; }
  const std::vector<int>& dims() const { return ops_.front().dims(); }
  int total_dim() const { return ops_.front().total_dim(); }
  bool trace_preserving() const { return trace_preserving_; }
  bool sub_normalized() const { return !trace_preserving_; }

 private:
  std::vector<Operator> ops_;
  bool trace_preserving_ = false;
};

/// Sub-normalized outputs are renormalized; an output with trace <= 1e-14 is
/// an annihilating channel and throws.
DensityState apply_kraus(const KrausChannel& channel, const DensityState& rho);

/// Lüders conditioning F rho F† / tr(F rho F†). F may be any operator (not
/// just a projection). Throws "conditioning on null event" when
/// tr(F rho F†) <= 1e-14.
DensityState luders_conditional_state(const DensityState& rho, const Operator& f);

/// Sequential conditional probability tr(rho F E F) / tr(rho F).
/// e, f must be hermitian with spectrum in [0, 1]; requires tr(rho f) > 1e-14.
double conditional_prob_luders(const DensityState& rho, const Operator& e,
                               const Operator& f);

/// Lattice conditional probability tr(rho (E ∧ F)) / tr(rho F).
double conditional_prob_meet(const DensityState& rho, const Projection& e,
                             const Projection& f);

struct CondProbComparison {
  double luders = 0.0;
  double meet = 0.0;
  double difference = 0.0;       // |luders - meet|
  double commutator_norm = 0.0;  // max-entry norm of EF - FE
  bool commuting = false;        // commutator_norm < 1e-10
};

/// Computes both conditional probabilities and asserts their equality within
/// 1e-10 whenever E and F commute (throws std::logic_error otherwise).
CondProbComparison commuting_equivalence_check(const DensityState& rho,
                                               const Projection& e,
                                               const Projection& f);

struct NonadditivityWitness {
  double lhs = 0.0;  // K((P_x ∨ P_y) ∧ P_z | f)
  double rhs = 0.0;  // K(P_x ∧ P_z | f) + K(P_y ∧ P_z | f)
  double gap = 0.0;  // lhs - rhs
};

/// Witness that the lattice conditional probability K(.|f) is not additive
/// over the join of non-commuting rank-one events. Requires z in span{x, y}
/// but parallel to neither.
NonadditivityWitness nonadditivity_witness(const Vector& x, const Vector& y,
                                           const Vector& z, const Projection& f,
                                           const DensityState& rho);

/// Environment-coupling reduction: rho1 -> tr_env[ U_t (rho1 ⊗ env) U_t† ]
/// with U_t = exp(-i t H). H must be hermitian within 1e-10.
class ReductionSpec {
 public:
  ReductionSpec(Operator hamiltonian, DensityState environment_state, double time);

  const Operator& hamiltonian() const { return hamiltonian_; }
  const DensityState& environment_state() const { return environment_; }
  double time() const { return time_; }

 private:
  Operator hamiltonian_;
  DensityState environment_;
  double time_;
};

DensityState reduction_channel(const ReductionSpec& spec, const DensityState& rho1);

/// Two-mode gain operator c = √G a ⊗ I + √(G-1) I ⊗ b† on a pair of
/// truncated Fock spaces (dims {cutoff, cutoff}). [c, c†] = I holds on the
/// subspace with both photon numbers < cutoff-1; the boundary rows carry the
/// truncation defect. Requires gain >= 1 and cutoff >= 2.
Operator amplifier_operator(double gain, int cutoff);

}  // namespace qplift
