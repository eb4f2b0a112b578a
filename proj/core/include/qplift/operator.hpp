#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qplift {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

int product_of_dims(const std::vector<int>& dims);

/// Finite-dimensional linear operator with explicit tensor-factor bookkeeping.
/// The matrix acts on the product of the listed factors; basis indices are
/// flattened row-major, factor 0 slowest. Any square matrix is admissible
/// (no hermiticity assumed); states and projections add their own invariants.
class Operator {
 public:
  Operator(std::vector<int> dims, Matrix m);

  static Operator identity(const std::vector<int>& dims);
  static Operator zero(const std::vector<int>& dims);

  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

  Operator adjoint() const;

  /// Same entries under a different factor split. The flattening convention
  /// makes this a pure bookkeeping change; total dimension must be preserved.
  Operator reshaped(std::vector<int> new_dims) const;

  /// max_ij |M - M†|, the worst entrywise hermiticity deviation.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-10) const;

 private:
  std::vector<int> dims_;
  Matrix m_;
};

/// Kronecker product; factor lists concatenate.
Operator tensor(const Operator& a, const Operator& b);

}  // namespace qplift
