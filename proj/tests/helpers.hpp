#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include <qplift/density.hpp>
#include <qplift/operator.hpp>
#include <qplift/projection.hpp>

// Test-local builders, kept independent of the library's own random suites so
// the two sides of every comparison come from different code paths.
namespace test_helpers {

using qplift::Complex;
using qplift::Matrix;
using qplift::Vector;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline Vector random_ket(std::mt19937_64& rng, int dim) {
  Vector v = random_matrix(rng, dim, 1).col(0);
  while (v.norm() < 1e-6) v = random_matrix(rng, dim, 1).col(0);
  return v / v.norm();
}

inline Matrix random_unitary(std::mt19937_64& rng, int dim) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, dim, dim));
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  return q;
}

inline qplift::DensityState random_density(std::mt19937_64& rng,
                                           std::vector<int> dims) {
  int d = qplift::product_of_dims(dims);
  Matrix g = random_matrix(rng, d, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return qplift::DensityState(qplift::Operator(std::move(dims), rho));
}

/// Projection onto the span of `rank` columns of a random unitary.
inline qplift::Projection random_projection(std::mt19937_64& rng, int dim,
                                            int rank) {
  Matrix u = random_unitary(rng, dim);
  Matrix basis = u.leftCols(rank);
  return qplift::Projection(qplift::Operator({dim}, basis * basis.adjoint()));
}

/// Alternating-conjugation limit (E F E)^n, an oracle for the lattice meet.
/// Eigenvalues cos²θ of E F E decay to 0 under powering except on the shared
/// range, so the limit is the meet. Convergence is geometric in the principal
/// angles; callers must reject pairs with nearly-aligned but unequal range
/// directions (the power is then still far from idempotent).
inline Matrix meet_power_oracle(const Matrix& e, const Matrix& f,
                                int iters = 200) {
  Matrix step = e * f * e;
  Matrix m = step;
  for (int i = 1; i < iters; ++i) m = step * m;
  return 0.5 * (m + m.adjoint().eval());
}

/// True when the power oracle has actually converged for this pair.
inline bool meet_oracle_converged(const Matrix& e, const Matrix& f,
                                  double tol = 1e-8) {
  Matrix m = meet_power_oracle(e, f);
  return max_abs_diff(m * m, m) <= tol;
}

}  // namespace test_helpers
