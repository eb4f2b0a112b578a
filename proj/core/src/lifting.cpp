#include "qplift/lifting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qplift {

ConvexDecomposition::ConvexDecomposition(std::vector<double> weights,
                                         std::vector<DensityState> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  if (weights_.empty() || weights_.size() != components_.size()) {
    throw std::invalid_argument("decomposition needs one weight per component");
  }
  double sum = 0.0;
  for (double& w : weights_) {
    if (w < -1e-12) throw std::invalid_argument("decomposition weights must be nonnegative");
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("decomposition weights must sum to 1");
  }
  int d = components_.front().total_dim();
  for (const auto& c : components_) {
    if (c.total_dim() != d) {
      throw std::invalid_argument("decomposition components must share one space");
    }
  }
}

ConvexDecomposition ConvexDecomposition::spectral(const DensityState& rho,
                                                  double weight_floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  std::vector<double> weights;
  std::vector<DensityState> components;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double w = es.eigenvalues()(i);
    if (w <= weight_floor) continue;
    weights.push_back(w);
    components.push_back(DensityState::pure(es.eigenvectors().col(i), rho.dims()));
  }
  if (weights.empty()) {
    throw std::invalid_argument("spectral decomposition found no mass above the floor");
  }
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;  // absorb the truncated tail
  return ConvexDecomposition(std::move(weights), std::move(components));
}

DensityState ConvexDecomposition::mixture() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (int n = 0; n < size(); ++n) m += weights_[n] * components_[n].matrix();
  return unchecked_density(Operator(components_.front().dims(), std::move(m)));
}

Lifting::Lifting(Kind kind, int input_dim, std::array<int, 2> output_dims,
                 ApplyFn fn, double output_tol)
    : kind_(kind),
      input_dim_(input_dim),
      output_dims_(output_dims),
      fn_(std::move(fn)),
      output_tol_(output_tol) {
  if (input_dim_ < 1 || output_dims_[0] < 1 || output_dims_[1] < 1) {
    throw std::invalid_argument("lifting dimensions must be >= 1");
  }
  if (!fn_) throw std::invalid_argument("lifting needs an apply function");
}

DensityState Lifting::apply(const DensityState& rho) const {
  if (rho.total_dim() != input_dim_) {
    throw std::invalid_argument("lifting input dimension mismatch");
  }
  DensityState out = fn_(rho);
  if (out.total_dim() != output_dims_[0] * output_dims_[1]) {
    throw std::runtime_error("lifting output dimension mismatch");
  }
  // Positivity is enforced by the DensityState the apply function built;
  // re-verify the cheap invariants at the lifting's own tolerance.
  double herm = out.op().hermiticity_defect();
  double trace_dev = std::abs(out.matrix().trace() - Complex(1.0, 0.0));
  if (herm > output_tol_ || trace_dev > output_tol_) {
    throw std::runtime_error("lifting output violates state invariants (hermiticity " +
                             std::to_string(herm) + ", trace deviation " +
                             std::to_string(trace_dev) + ")");
  }
  return out;
}

Lifting isometric_lifting(const Matrix& v, std::array<int, 2> output_dims, double tol) {
  int n = static_cast<int>(v.cols());
  if (v.rows() != output_dims[0] * output_dims[1]) {
    throw std::invalid_argument("isometry rows must match the output dimension");
  }
  Matrix gram = v.adjoint() * v;
  double dev = (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw std::invalid_argument("isometric lifting requires v†v = I (deviation " +
                                std::to_string(dev) + ")");
  }
  Matrix vc = v;
  std::vector<int> out_dims{output_dims[0], output_dims[1]};
  return Lifting(
      Lifting::Kind::isometric, n, output_dims,
      [vc, out_dims](const DensityState& rho) {
        Matrix m = vc * rho.matrix() * vc.adjoint();
        return unchecked_density(Operator(out_dims, std::move(m)));
      });
}

Lifting compound_lifting(std::function<DensityState(const DensityState&)> channel,
                         int input_dim, int channel_output_dim,
                         std::optional<ConvexDecomposition> decomposition,
                         Lifting::Kind kind) {
  if (!channel) throw std::invalid_argument("compound lifting needs a channel");
  if (decomposition && decomposition->dim() != input_dim) {
    throw std::invalid_argument("decomposition lives on the wrong space");
  }
  std::array<int, 2> out{input_dim, channel_output_dim};
  return Lifting(
      kind, input_dim, out,
      [channel, decomposition, input_dim, channel_output_dim](const DensityState& rho) {
        ConvexDecomposition decomp =
            decomposition ? *decomposition : ConvexDecomposition::spectral(rho);
        if (decomposition) {
          double dev =
              (decomp.mixture().matrix() - rho.matrix()).cwiseAbs().maxCoeff();
          if (dev > 1e-9) {
            throw std::invalid_argument(
                "decomposition does not sum to the lifted state (deviation " +
                std::to_string(dev) + ")");
          }
        }
        Matrix m = Matrix::Zero(input_dim * channel_output_dim,
                                input_dim * channel_output_dim);
        for (int n = 0; n < decomp.size(); ++n) {
          DensityState mapped = channel(decomp.component(n));
          if (mapped.total_dim() != channel_output_dim) {
            throw std::runtime_error("channel output dimension mismatch");
          }
          m += decomp.weight(n) * Eigen::kroneckerProduct(decomp.component(n).matrix(),
                                                          mapped.matrix());
        }
        return unchecked_density(
            Operator({input_dim, channel_output_dim}, std::move(m)));
      });
}

Lifting compound_lifting(const KrausChannel& channel,
                         std::optional<ConvexDecomposition> decomposition) {
  int d = channel.total_dim();
  KrausChannel copy = channel;
  return compound_lifting(
      [copy](const DensityState& rho) { return apply_kraus(copy, rho); }, d, d,
      std::move(decomposition));
}

Lifting product_lifting(int input_dim, DensityState sigma) {
  std::array<int, 2> out{input_dim, sigma.total_dim()};
  return Lifting(Lifting::Kind::custom, input_dim, out,
                 [sigma, out](const DensityState& rho) {
                   Matrix m = Eigen::kroneckerProduct(rho.matrix(), sigma.matrix());
                   return unchecked_density(Operator({out[0], out[1]}, std::move(m)));
                 });
}

std::pair<DensityState, DensityState> marginal_channels(const Lifting& l,
                                                        const DensityState& rho) {
  DensityState joint = l.apply(rho).reshaped({l.output_dims()[0], l.output_dims()[1]});
  return {trace_out_factor(joint, 1), trace_out_factor(joint, 0)};
}

NondemolitionCheck is_nondemolition(const Lifting& l, const DensityState& rho,
                                    double tol) {
  DensityState marginal1 = marginal_channels(l, rho).first;
  double dev = (marginal1.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
  return {dev <= tol, dev};
}

}  // namespace qplift
