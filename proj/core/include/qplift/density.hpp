#pragma once

#include <vector>

#include "qplift/operator.hpp"

namespace qplift {

/// Density operator: hermitian, positive semidefinite, unit trace, all
/// enforced at construction (throws std::invalid_argument on violation).
class DensityState {
 public:
  struct Options {
    double tol = 1e-10;
    /// Divide by the trace before checking; for post-truncation objects.
    bool renormalize_trace = false;
  };

  explicit DensityState(Operator op);
  DensityState(Operator op, Options opt);

  /// |ket><ket| without an eigensolve; positivity holds by construction.
  /// The ket must be normalized within norm_tol.
  static DensityState pure(const Vector& ket, std::vector<int> dims,
                           double norm_tol = 1e-10);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const std::vector<int>& dims() const { return op_.dims(); }
  int total_dim() const { return op_.total_dim(); }

  /// Factor re-bookkeeping; entries (and validity) unchanged.
  DensityState reshaped(std::vector<int> new_dims) const;

 private:
  struct Unchecked {};
  DensityState(Operator op, Unchecked) : op_(std::move(op)) {}

  Operator op_;

  friend DensityState unchecked_density(Operator op);
};

/// Internal fast path for states whose validity is structural (pure states,
/// convex mixtures of valid states, factor reshapes).
DensityState unchecked_density(Operator op);

/// Reduced state on the kept factor; traces out every other factor.
/// Throws "nothing to trace out" for single-factor states.
DensityState partial_trace(const DensityState& rho, int keep);

/// Traces out exactly one factor; the remaining factor structure survives.
DensityState trace_out_factor(const DensityState& rho, int drop);

/// tr(rho a); real up to rounding when a is hermitian.
Complex expectation(const DensityState& rho, const Operator& a);

/// Convenience for hermitian observables: real part of tr(rho a).
double real_expectation(const DensityState& rho, const Operator& a);

}  // namespace qplift
