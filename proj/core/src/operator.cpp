#include "qplift/operator.hpp"

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qplift {

int product_of_dims(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

Operator::Operator(std::vector<int> dims, Matrix m)
    : dims_(std::move(dims)), m_(std::move(m)) {
  if (dims_.empty()) throw std::invalid_argument("operator needs at least one factor");
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("factor dimensions must be >= 1");
  }
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator matrix must be square");
  if (m_.rows() != product_of_dims(dims_)) {
    throw std::invalid_argument("matrix size does not match the factor dimensions");
  }
}

Operator Operator::identity(const std::vector<int>& dims) {
  int n = product_of_dims(dims);
  return Operator(dims, Matrix::Identity(n, n));
}

Operator Operator::zero(const std::vector<int>& dims) {
  int n = product_of_dims(dims);
  return Operator(dims, Matrix::Zero(n, n));
}

Operator Operator::adjoint() const { return Operator(dims_, m_.adjoint()); }

Operator Operator::reshaped(std::vector<int> new_dims) const {
  if (product_of_dims(new_dims) != total_dim()) {
    throw std::invalid_argument("reshape must preserve the total dimension");
  }
  return Operator(std::move(new_dims), m_);
}

double Operator::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

Operator tensor(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Matrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return Operator(std::move(dims), std::move(m));
}

}  // namespace qplift
