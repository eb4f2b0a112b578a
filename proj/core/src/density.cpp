#include "qplift/density.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qplift/validation.hpp"

namespace qplift {

DensityState::DensityState(Operator op) : DensityState(std::move(op), Options()) {}

DensityState::DensityState(Operator op, Options opt) : op_(std::move(op)) {
  if (opt.renormalize_trace) {
    double tr = op_.matrix().trace().real();
    if (tr <= 1e-14) throw std::invalid_argument("cannot renormalize a traceless operator");
    op_ = Operator(op_.dims(), op_.matrix() / tr);
  }
  ValidationReport report = validate_density(op_, opt.tol);
  if (!report.all_pass()) {
    throw std::invalid_argument("not a density operator:\n" + report.to_string());
  }
}

DensityState DensityState::pure(const Vector& ket, std::vector<int> dims,
                                double norm_tol) {
  if (ket.size() != product_of_dims(dims)) {
    throw std::invalid_argument("ket length does not match the factor dimensions");
  }
  double norm = ket.norm();
  if (std::abs(norm - 1.0) > norm_tol) {
    throw std::invalid_argument("pure state requires a normalized ket (norm " +
                                std::to_string(norm) + ")");
  }
  Matrix m = ket * ket.adjoint();
  return DensityState(Operator(std::move(dims), std::move(m)), Unchecked{});
}

DensityState DensityState::reshaped(std::vector<int> new_dims) const {
  return DensityState(op_.reshaped(std::move(new_dims)), Unchecked{});
}

DensityState unchecked_density(Operator op) {
  return DensityState(std::move(op), DensityState::Unchecked{});
}

namespace {

// Strides for one flat row-major index split at factor `f` of `dims`:
// index = (outer * dims[f] + mid) * inner_size + inner.
struct FactorSplit {
  int before = 1, at = 1, after = 1;
};

FactorSplit split_at(const std::vector<int>& dims, int f) {
  FactorSplit s;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (i < f) s.before *= dims[i];
    else if (i == f) s.at = dims[i];
    else s.after *= dims[i];
  }
  return s;
}

}  // namespace

DensityState trace_out_factor(const DensityState& rho, int drop) {
  const auto& dims = rho.dims();
  if (dims.size() < 2) throw std::invalid_argument("nothing to trace out");
  if (drop < 0 || drop >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("factor index out of range");
  }

  FactorSplit s = split_at(dims, drop);
  int kept = s.before * s.after;
  Matrix out = Matrix::Zero(kept, kept);
  const Matrix& m = rho.matrix();

  for (int rb = 0; rb < s.before; ++rb)
    for (int ra = 0; ra < s.after; ++ra)
      for (int cb = 0; cb < s.before; ++cb)
        for (int ca = 0; ca < s.after; ++ca) {
          Complex sum = 0.0;
          for (int t = 0; t < s.at; ++t) {
            int row = (rb * s.at + t) * s.after + ra;
            int col = (cb * s.at + t) * s.after + ca;
            sum += m(row, col);
          }
          out(rb * s.after + ra, cb * s.after + ca) = sum;
        }

  std::vector<int> new_dims;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (i != drop) new_dims.push_back(dims[i]);
  }
  return unchecked_density(Operator(std::move(new_dims), std::move(out)));
}

DensityState partial_trace(const DensityState& rho, int keep) {
  const auto& dims = rho.dims();
  if (dims.size() < 2) throw std::invalid_argument("nothing to trace out");
  if (keep < 0 || keep >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("factor index out of range");
  }

  DensityState out = rho;
  // Repeatedly drop the outermost non-kept factor; the kept index shifts
  // down once for every factor dropped before it.
  int kept_pos = keep;
  while (out.dims().size() > 1) {
    int drop = (kept_pos == 0) ? 1 : 0;
    out = trace_out_factor(out, drop);
    if (drop < kept_pos) --kept_pos;
  }
  return out;
}

Complex expectation(const DensityState& rho, const Operator& a) {
  if (rho.total_dim() != a.total_dim()) {
    throw std::invalid_argument("expectation: operator and state dimensions differ");
  }
  // tr(rho a) without forming the product matrix.
  return (rho.matrix().transpose().cwiseProduct(a.matrix())).sum();
}

double real_expectation(const DensityState& rho, const Operator& a) {
  return expectation(rho, a).real();
}

}  // namespace qplift
