#include "qplift/coherent.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qplift/fock.hpp"

namespace qplift {

namespace {

void require_splitting_ratio(Complex alpha, Complex beta) {
  double dev = std::abs(std::norm(alpha) + std::norm(beta) - 1.0);
  if (dev > 1e-10) {
    throw std::invalid_argument(
        "beam splitting requires |alpha|^2 + |beta|^2 = 1 (deviation " +
        std::to_string(dev) + ")");
  }
}

}  // namespace

int coherent_default_cutoff(Complex theta) {
  double r = std::abs(theta);
  return static_cast<int>(std::ceil(r * r + 8.0 * r + 10.0));
}

CoherentVector coherent_vector(Complex theta, int cutoff, double tail_tolerance) {
  if (cutoff < 0) cutoff = coherent_default_cutoff(theta);
  if (cutoff < 1) throw std::invalid_argument("coherent cutoff must be >= 1");

  Vector c(cutoff);
  c(0) = std::exp(-std::norm(theta) / 2.0);
  for (int n = 1; n < cutoff; ++n) {
    c(n) = c(n - 1) * theta / std::sqrt(static_cast<double>(n));
  }

  double kept = c.squaredNorm();
  double tail = std::max(0.0, 1.0 - kept);
  if (tail > tail_tolerance) {
    throw std::invalid_argument("cutoff too small for amplitude |theta| = " +
                                std::to_string(std::abs(theta)) +
                                " (tail mass " + std::to_string(tail) +
                                "); increase the cutoff");
  }
  c /= std::sqrt(kept);

  CoherentVector v;
  v.amplitude = theta;
  v.cutoff = cutoff;
  v.coefficients = std::move(c);
  v.tail_mass = tail;
  return v;
}

Complex coherent_overlap(const CoherentVector& a, const CoherentVector& b) {
  if (a.cutoff != b.cutoff) {
    throw std::invalid_argument("overlap requires equal cutoffs");
  }
  return a.coefficients.dot(b.coefficients);
}

double mean_photon_number(const CoherentVector& v) {
  double sum = 0.0;
  for (int n = 0; n < v.cutoff; ++n) sum += n * std::norm(v.coefficients(n));
  return sum;
}

DensityState coherent_state(const CoherentVector& v) {
  return DensityState::pure(v.coefficients, {v.cutoff});
}

BipartiteKet beam_split(const CoherentVector& input, BeamSplitMode mode,
                        Complex alpha, Complex beta) {
  require_splitting_ratio(alpha, beta);
  int n = input.cutoff;
  Complex theta = input.amplitude;

  if (mode == BeamSplitMode::two_input) {
    throw std::invalid_argument("two_input mode needs two input vectors");
  }

  CoherentVector a = coherent_vector(alpha * theta, n);
  CoherentVector b = coherent_vector(beta * theta, n);

  BipartiteKet out;
  out.dims = {n, n};
  if (mode == BeamSplitMode::plain) {
    out.ket = Eigen::kroneckerProduct(a.coefficients, b.coefficients);
    return out;
  }

  // superposed: (|αθ> ⊗ |βθ> - i |βθ> ⊗ |αθ>) / √2, then renormalized; the
  // branches are not orthogonal, so the combination is not automatically of
  // unit norm.
  Vector ket = (Eigen::kroneckerProduct(a.coefficients, b.coefficients) -
                Complex(0.0, 1.0) *
                    Eigen::kroneckerProduct(b.coefficients, a.coefficients)) /
               std::sqrt(2.0);
  out.branch_norm = ket.norm();
  if (out.branch_norm <= 1e-14) {
    throw std::runtime_error("superposed branches cancel");
  }
  out.ket = ket / out.branch_norm;
  return out;
}

BipartiteKet beam_split(const CoherentVector& theta_in,
                        const CoherentVector& gamma_in, Complex alpha,
                        Complex beta) {
  require_splitting_ratio(alpha, beta);
  if (theta_in.cutoff != gamma_in.cutoff) {
    throw std::invalid_argument("two_input mode requires equal cutoffs");
  }
  int n = theta_in.cutoff;
  Complex theta = theta_in.amplitude;
  Complex gamma = gamma_in.amplitude;

  CoherentVector a = coherent_vector(alpha * theta + beta * gamma, n);
  CoherentVector b =
      coherent_vector(-std::conj(beta) * theta + std::conj(alpha) * gamma, n);

  BipartiteKet out;
  out.dims = {n, n};
  out.ket = Eigen::kroneckerProduct(a.coefficients, b.coefficients);
  return out;
}

DensityState beam_split_mixture(
    const std::vector<std::pair<double, CoherentVector>>& components,
    BeamSplitMode mode, Complex alpha, Complex beta) {
  if (components.empty()) {
    throw std::invalid_argument("mixture needs at least one component");
  }
  double total = 0.0;
  for (const auto& [w, v] : components) {
    if (w < -1e-12) throw std::invalid_argument("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }

  int n = components.front().second.cutoff;
  Matrix m = Matrix::Zero(n * n, n * n);
  for (const auto& [w, v] : components) {
    if (v.cutoff != n) throw std::invalid_argument("mixture components need equal cutoffs");
    BipartiteKet split = beam_split(v, mode, alpha, beta);
    m += std::max(0.0, w) * (split.ket * split.ket.adjoint());
  }
  return unchecked_density(Operator({n, n}, std::move(m)));
}

BipartiteKet beam_split_linear(
    const std::vector<std::pair<Complex, CoherentVector>>& terms,
    BeamSplitMode mode, Complex alpha, Complex beta) {
  if (terms.empty()) throw std::invalid_argument("linear combination needs terms");
  if (mode == BeamSplitMode::two_input) {
    throw std::invalid_argument("beam_split_linear supports single-input modes");
  }
  int n = terms.front().second.cutoff;
  BipartiteKet out;
  out.dims = {n, n};
  out.ket = Vector::Zero(n * n);
  for (const auto& [coeff, v] : terms) {
    if (v.cutoff != n) throw std::invalid_argument("linear terms need equal cutoffs");
    out.ket += coeff * beam_split(v, mode, alpha, beta).ket;
  }
  return out;
}

double mean_photon_number(const BipartiteKet& ket, int factor) {
  if (factor != 0 && factor != 1) throw std::invalid_argument("factor must be 0 or 1");
  int n0 = ket.dims[0], n1 = ket.dims[1];
  double sum = 0.0;
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      sum += (factor == 0 ? i : j) * std::norm(ket.ket(i * n1 + j));
    }
  }
  return sum;
}

Lifting beam_splitting_lifting(BeamSplitMode mode, Complex alpha, Complex beta,
                               int cutoff, double match_tol) {
  require_splitting_ratio(alpha, beta);
  if (mode == BeamSplitMode::two_input) {
    throw std::invalid_argument("two_input mode is not a single-state lifting");
  }
  if (cutoff < 1) throw std::invalid_argument("coherent cutoff must be >= 1");

  Operator a = annihilation(cutoff);
  return Lifting(
      Lifting::Kind::isometric, cutoff, {cutoff, cutoff},
      [mode, alpha, beta, cutoff, match_tol, a](const DensityState& rho) {
        // Recover the amplitude; for a coherent state tr(rho a) = theta.
        Complex theta = expectation(rho, a);
        CoherentVector cand = coherent_vector(theta, cutoff, /*tail_tolerance=*/1.0);
        double dev = (rho.matrix() -
                      Matrix(cand.coefficients * cand.coefficients.adjoint()))
                         .cwiseAbs()
                         .maxCoeff();
        if (dev > match_tol) {
          throw std::runtime_error(
              "beam splitting lifting requires a coherent input state (deviation " +
              std::to_string(dev) + ")");
        }
        BipartiteKet split = beam_split(cand, mode, alpha, beta);
        return DensityState::pure(split.ket, {cutoff, cutoff});
      });
}

}  // namespace qplift
