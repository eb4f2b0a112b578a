#include "qplift/projection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qplift {

namespace {
constexpr double kMeetEigenTol = 1e-8;   // |λ - 2| window selecting the intersection
constexpr double kJoinRankTol = 1e-10;   // singular-value cutoff for the combined range
}  // namespace

Projection::Projection(Operator op, double tol) : op_(std::move(op)) {
  double herm = op_.hermiticity_defect();
  if (herm > tol) {
    throw std::invalid_argument("projection must be hermitian (deviation " +
                                std::to_string(herm) + ")");
  }
  double idem = (op_.matrix() * op_.matrix() - op_.matrix()).cwiseAbs().maxCoeff();
  if (idem > tol) {
    throw std::invalid_argument("projection must be idempotent (deviation " +
                                std::to_string(idem) + ")");
  }
}

Projection Projection::onto_unit_vector(const Vector& x, double norm_tol) {
  double norm = x.norm();
  if (std::abs(norm - 1.0) > norm_tol) {
    throw std::invalid_argument("projection requires a unit vector (norm " +
                                std::to_string(norm) + ")");
  }
  Matrix m = x * x.adjoint();
  return Projection(Operator({static_cast<int>(x.size())}, std::move(m)));
}

Projection Projection::zero(const std::vector<int>& dims) {
  return Projection(Operator::zero(dims));
}

Projection Projection::identity(const std::vector<int>& dims) {
  return Projection(Operator::identity(dims));
}

int Projection::rank() const {
  return static_cast<int>(std::lround(op_.matrix().trace().real()));
}

namespace {

// Columns of the returned matrix form an orthonormal basis of range(p).
Matrix range_basis(const Projection& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix());
  int n = p.total_dim();
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    if (es.eigenvalues()(i) > 0.5) ++rank;  // spectrum is {0, 1} up to rounding
  }
  Matrix basis(n, rank);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    if (es.eigenvalues()(i) > 0.5) basis.col(col++) = es.eigenvectors().col(i);
  }
  return basis;
}

void require_same_space(const Projection& e, const Projection& f, const char* what) {
  if (e.total_dim() != f.total_dim()) {
    throw std::invalid_argument(std::string(what) + ": projections on different spaces");
  }
}

}  // namespace

Projection meet_projection(const Projection& e, const Projection& f) {
  require_same_space(e, f, "meet");
  // range(E) ∩ range(F) is exactly the eigenspace of E + F at eigenvalue 2.
  Eigen::SelfAdjointEigenSolver<Matrix> es(e.matrix() + f.matrix());
  int n = e.total_dim();
  Matrix meet = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()(i) - 2.0) < kMeetEigenTol) {
      meet += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  return Projection(Operator(e.dims(), std::move(meet)));
}

Projection join_projection(const Projection& e, const Projection& f) {
  require_same_space(e, f, "join");
  Matrix be = range_basis(e);
  Matrix bf = range_basis(f);
  int n = e.total_dim();
  if (be.cols() + bf.cols() == 0) return Projection::zero(e.dims());

  Matrix combined(n, be.cols() + bf.cols());
  combined << be, bf;
  Eigen::JacobiSVD<Matrix> svd(combined, Eigen::ComputeThinU);
  Matrix join = Matrix::Zero(n, n);
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > kJoinRankTol) {
      join += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
    }
  }
  return Projection(Operator(e.dims(), std::move(join)));
}

}  // namespace qplift
