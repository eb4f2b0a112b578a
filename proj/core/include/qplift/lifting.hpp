#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>

#include "qplift/channels.hpp"
#include "qplift/density.hpp"

namespace qplift {

/// Finite convex decomposition rho = sum_n w_n rho_n.
class ConvexDecomposition {
 public:
  ConvexDecomposition(std::vector<double> weights,
                      std::vector<DensityState> components);

  /// Eigendecomposition of rho; eigenvalues below weight_floor are dropped
  /// and the weights renormalized.
  static ConvexDecomposition spectral(const DensityState& rho,
                                      double weight_floor = 1e-12);

  int size() const { return static_cast<int>(weights_.size()); }
  double weight(int n) const { return weights_.at(n); }
  const DensityState& component(int n) const { return components_.at(n); }
  int dim() const { return components_.front().total_dim(); }

  DensityState mixture() const;

 private:
  std::vector<double> weights_;
  std::vector<DensityState> components_;
};

/// Map from states on the input space to states on a two-factor product
/// space. Output invariants (hermiticity, trace, dimension) are re-verified
/// on every apply within output_tol.
class Lifting {
 public:
  enum class Kind { isometric, compound, custom };
  using ApplyFn = std::function<DensityState(const DensityState&)>;

  Lifting(Kind kind, int input_dim, std::array<int, 2> output_dims, ApplyFn fn,
          double output_tol = 1e-9);

  DensityState apply(const DensityState& rho) const;

  Kind kind() const { return kind_; }
  int input_dim() const { return input_dim_; }
  const std::array<int, 2>& output_dims() const { return output_dims_; }

 private:
  Kind kind_;
  int input_dim_;
  std::array<int, 2> output_dims_;
  ApplyFn fn_;
  double output_tol_;
};

/// rho -> V rho V† for an isometry v ((d1*d2) x n matrix, v†v = I within tol).
/// Pure states stay pure.
Lifting isometric_lifting(const Matrix& v, std::array<int, 2> output_dims,
                          double tol = 1e-9);

/// Compound lifting rho = sum w_n rho_n -> sum w_n rho_n ⊗ channel(rho_n).
/// With a fixed decomposition, apply insists the input equals its mixture
/// within 1e-9; without one, the spectral decomposition of the input is used.
/// Nonlinear in rho, nondemolishing on factor 1 by construction.
Lifting compound_lifting(std::function<DensityState(const DensityState&)> channel,
                         int input_dim, int channel_output_dim,
                         std::optional<ConvexDecomposition> decomposition = {},
                         Lifting::Kind kind = Lifting::Kind::compound);
Lifting compound_lifting(const KrausChannel& channel,
                         std::optional<ConvexDecomposition> decomposition = {});

/// Constant-context embedding rho -> rho ⊗ sigma.
Lifting product_lifting(int input_dim, DensityState sigma);

/// Factor marginals (tr_2 E*rho, tr_1 E*rho) of the lifted state.
std::pair<DensityState, DensityState> marginal_channels(const Lifting& l,
                                                        const DensityState& rho);

struct NondemolitionCheck {
  bool nondemolition = false;
  double deviation = 0.0;  // max-entry norm of tr_2(E*rho) - rho
};

/// A lifting is nondemolishing at rho when the factor-1 marginal of the
/// lifted state reproduces rho within tol.
NondemolitionCheck is_nondemolition(const Lifting& l, const DensityState& rho,
                                    double tol = 1e-9);

}  // namespace qplift
