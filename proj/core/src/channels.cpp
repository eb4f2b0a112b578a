#include "qplift/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qplift/fock.hpp"

namespace qplift {

namespace {
constexpr double kNullEventTol = 1e-14;

void require_effect(const Operator& a, const char* name) {
  if (!a.is_hermitian(1e-10)) {
    throw std::invalid_argument(std::string(name) + " must be hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 || es.eigenvalues().maxCoeff() > 1.0 + 1e-10) {
    throw std::invalid_argument(std::string(name) + " must have spectrum within [0, 1]");
  }
}
}  // namespace

KrausChannel::KrausChannel(std::vector<Operator> kraus_ops, double tol)
    : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw std::invalid_argument("kraus channel needs at least one operator");
  int n = ops_.front().total_dim();
  for (const auto& k : ops_) {
    if (k.total_dim() != n) {
      throw std::invalid_argument("kraus operators must share one space");
    }
  }

  Matrix s = Matrix::Zero(n, n);
  for (const auto& k : ops_) s += k.matrix().adjoint() * k.matrix();
  double identity_dev = (s - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (identity_dev <= tol) {
    trace_preserving_ = true;
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().maxCoeff() > 1.0 + tol) {
    throw std::invalid_argument(
        "kraus operators exceed the identity: neither trace preserving nor sub-normalized");
  }
  trace_preserving_ = false;  // flagged sub-normalized
}

DensityState apply_kraus(const KrausChannel& channel, const DensityState& rho) {
  if (rho.total_dim() != channel.total_dim()) {
    throw std::invalid_argument("apply_kraus: channel and state dimensions differ");
  }
  Matrix out = Matrix::Zero(rho.total_dim(), rho.total_dim());
  for (const auto& k : channel.kraus_ops()) {
    out += k.matrix() * rho.matrix() * k.matrix().adjoint();
  }
  if (channel.sub_normalized()) {
    double tr = out.trace().real();
    if (tr <= kNullEventTol) throw std::runtime_error("annihilating channel");
    return DensityState(Operator(rho.dims(), std::move(out)),
                        {.tol = 1e-9, .renormalize_trace = true});
  }
  return DensityState(Operator(rho.dims(), std::move(out)), {.tol = 1e-9});
}

DensityState luders_conditional_state(const DensityState& rho, const Operator& f) {
  if (rho.total_dim() != f.total_dim()) {
    throw std::invalid_argument("conditioning: operator and state dimensions differ");
  }
  Matrix num = f.matrix() * rho.matrix() * f.matrix().adjoint();
  double tr = num.trace().real();
  if (tr <= kNullEventTol) throw std::runtime_error("conditioning on null event");
  return DensityState(Operator(rho.dims(), std::move(num)),
                      {.tol = 1e-9, .renormalize_trace = true});
}

double conditional_prob_luders(const DensityState& rho, const Operator& e,
                               const Operator& f) {
  if (rho.total_dim() != e.total_dim() || rho.total_dim() != f.total_dim()) {
    throw std::invalid_argument("conditional probability: dimension mismatch");
  }
  require_effect(e, "event effect");
  require_effect(f, "conditioning effect");
  double denom = expectation(rho, f).real();
  if (denom <= kNullEventTol) throw std::runtime_error("conditioning on null event");
  Matrix fef = f.matrix() * e.matrix() * f.matrix();
  double num = (rho.matrix() * fef).trace().real();
  return num / denom;
}

double conditional_prob_meet(const DensityState& rho, const Projection& e,
                             const Projection& f) {
  if (rho.total_dim() != e.total_dim() || rho.total_dim() != f.total_dim()) {
    throw std::invalid_argument("conditional probability: dimension mismatch");
  }
  double denom = expectation(rho, f.op()).real();
  if (denom <= kNullEventTol) throw std::runtime_error("conditioning on null event");
  Projection meet = meet_projection(e, f);
  return expectation(rho, meet.op()).real() / denom;
}

CondProbComparison commuting_equivalence_check(const DensityState& rho,
                                               const Projection& e,
                                               const Projection& f) {
  CondProbComparison r;
  r.commutator_norm =
      (e.matrix() * f.matrix() - f.matrix() * e.matrix()).cwiseAbs().maxCoeff();
  r.commuting = r.commutator_norm < 1e-10;
  r.luders = conditional_prob_luders(rho, e.op(), f.op());
  r.meet = conditional_prob_meet(rho, e, f);
  r.difference = std::abs(r.luders - r.meet);
  if (r.commuting && r.difference > 1e-10) {
    throw std::logic_error(
        "commuting events produced inequivalent conditional probabilities (difference " +
        std::to_string(r.difference) + ")");
  }
  return r;
}

NonadditivityWitness nonadditivity_witness(const Vector& x, const Vector& y,
                                           const Vector& z, const Projection& f,
                                           const DensityState& rho) {
  if (x.size() != y.size() || x.size() != z.size()) {
    throw std::invalid_argument("witness vectors must share one space");
  }
  if (rho.total_dim() != x.size() || f.total_dim() != x.size()) {
    throw std::invalid_argument("witness: dimension mismatch");
  }
  for (const Vector* v : {&x, &y, &z}) {
    if (std::abs(v->norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("witness vectors must be normalized");
    }
  }
  if (std::abs(x.dot(z)) >= 1.0 - 1e-10) {
    throw std::invalid_argument("degenerate witness: z coincides with x up to phase");
  }
  if (std::abs(y.dot(z)) >= 1.0 - 1e-10) {
    throw std::invalid_argument("degenerate witness: z coincides with y up to phase");
  }

  // z must lie in span{x, y}: remove the Gram-Schmidt projection and inspect
  // the residual.
  Vector residual = z - x * x.dot(z);
  Vector y_perp = y - x * x.dot(y);
  double ynorm = y_perp.norm();
  if (ynorm > 1e-12) {
    y_perp /= ynorm;
    residual -= y_perp * y_perp.dot(residual);
  }
  if (residual.norm() > 1e-10) {
    throw std::invalid_argument("witness vector z must lie in span{x, y}");
  }

  Projection px = Projection::onto_unit_vector(x);
  Projection py = Projection::onto_unit_vector(y);
  Projection pz = Projection::onto_unit_vector(z);

  NonadditivityWitness w;
  w.lhs = conditional_prob_meet(rho, meet_projection(join_projection(px, py), pz), f);
  w.rhs = conditional_prob_meet(rho, meet_projection(px, pz), f) +
          conditional_prob_meet(rho, meet_projection(py, pz), f);
  w.gap = w.lhs - w.rhs;
  return w;
}

ReductionSpec::ReductionSpec(Operator hamiltonian, DensityState environment_state,
                             double time)
    : hamiltonian_(std::move(hamiltonian)),
      environment_(std::move(environment_state)),
      time_(time) {
  if (!hamiltonian_.is_hermitian(1e-10)) {
    throw std::invalid_argument("reduction hamiltonian must be hermitian");
  }
  if (!std::isfinite(time_)) throw std::invalid_argument("reduction time must be finite");
}

DensityState reduction_channel(const ReductionSpec& spec, const DensityState& rho1) {
  int d1 = rho1.total_dim();
  int dk = spec.environment_state().total_dim();
  if (d1 * dk != spec.hamiltonian().total_dim()) {
    throw std::invalid_argument(
        "reduction: hamiltonian does not act on system times environment");
  }

  // exp(-i t H) through the hermitian eigendecomposition.
  Eigen::SelfAdjointEigenSolver<Matrix> es(spec.hamiltonian().matrix());
  Vector phases(es.eigenvalues().size());
  for (int i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -spec.time() * es.eigenvalues()(i)));
  }
  Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

  Matrix joint = Eigen::kroneckerProduct(rho1.matrix(), spec.environment_state().matrix());
  Matrix evolved = u * joint * u.adjoint();

  DensityState theta(Operator({d1, dk}, std::move(evolved)), {.tol = 1e-9});
  DensityState reduced = trace_out_factor(theta, 1);
  return reduced.reshaped(rho1.dims());
}

Operator amplifier_operator(double gain, int cutoff) {
  if (gain < 1.0) throw std::invalid_argument("amplifier gain must be >= 1");
  if (cutoff < 2) throw std::invalid_argument("amplifier cutoff must be >= 2");
  Matrix a = annihilation(cutoff).matrix();
  Matrix id = Matrix::Identity(cutoff, cutoff);
  Matrix c = std::sqrt(gain) * Eigen::kroneckerProduct(a, id) +
             std::sqrt(gain - 1.0) * Eigen::kroneckerProduct(id, Matrix(a.adjoint()));
  return Operator({cutoff, cutoff}, std::move(c));
}

}  // namespace qplift
