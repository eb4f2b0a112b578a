#pragma once

#include <vector>

#include "qplift/operator.hpp"

namespace qplift {

/// Orthogonal projection: P = P† = P², enforced at construction.
class Projection {
 public:
  explicit Projection(Operator op, double tol = 1e-10);

  /// Rank-one projection |x><x| onto a unit vector.
  static Projection onto_unit_vector(const Vector& x, double norm_tol = 1e-10);
  static Projection zero(const std::vector<int>& dims);
  static Projection identity(const std::vector<int>& dims);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const std::vector<int>& dims() const { return op_.dims(); }
  int total_dim() const { return op_.total_dim(); }

  /// Dimension of the range (trace rounded to the nearest integer).
  int rank() const;

 private:
  Operator op_;
};

/// Lattice meet E ∧ F: projection onto range(E) ∩ range(F), computed from the
/// eigenspace of E + F at eigenvalue 2 (threshold |λ - 2| < 1e-8).
Projection meet_projection(const Projection& e, const Projection& f);

/// Lattice join E ∨ F: projection onto range(E) + range(F), computed by
/// orthonormalizing the concatenated range bases (rank tolerance 1e-10).
Projection join_projection(const Projection& e, const Projection& f);

}  // namespace qplift
