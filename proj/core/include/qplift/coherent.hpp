#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qplift/density.hpp"
#include "qplift/lifting.hpp"

namespace qplift {

/// Truncated coherent vector: coefficients e^{-|θ|²/2} θ^n / √(n!) for
/// n < cutoff, renormalized. tail_mass records the Poisson weight the
/// truncation discarded (before renormalization).
struct CoherentVector {
  Complex amplitude;
  int cutoff = 0;
  Vector coefficients;
  double tail_mass = 0.0;
};

/// Cutoff heuristic ceil(|θ|² + 8|θ| + 10); keeps the tail far below 1e-9
/// over the supported amplitude range.
int coherent_default_cutoff(Complex theta);

/// cutoff < 0 selects the default heuristic. Throws when the discarded tail
/// mass exceeds tail_tolerance ("cutoff too small").
CoherentVector coherent_vector(Complex theta, int cutoff = -1,
                               double tail_tolerance = 1e-9);

/// Numeric truncated overlap <θ|θ'>; both vectors need equal cutoffs.
Complex coherent_overlap(const CoherentVector& a, const CoherentVector& b);

double mean_photon_number(const CoherentVector& v);

DensityState coherent_state(const CoherentVector& v);

enum class BeamSplitMode { plain, superposed, two_input };

/// Two-factor pure output of a beam splitting. branch_norm is the norm of
/// the superposed combination before renormalization (1 for the other
/// modes, where no renormalization happens).
struct BipartiteKet {
  Vector ket;
  std::array<int, 2> dims{};
  double branch_norm = 1.0;
};

/// plain:      |θ>  ->  |αθ> ⊗ |βθ>
/// superposed: |θ>  ->  (|αθ> ⊗ |βθ> - i |βθ> ⊗ |αθ>) / √2, renormalized
/// Requires |α|² + |β|² = 1 within 1e-10. Outputs keep the input cutoff.
BipartiteKet beam_split(const CoherentVector& input, BeamSplitMode mode,
                        Complex alpha, Complex beta);

/// two_input: |θ> ⊗ |γ>  ->  |αθ + βγ> ⊗ |-β̄θ + ᾱγ>. Equal cutoffs required.
BipartiteKet beam_split(const CoherentVector& theta_in,
                        const CoherentVector& gamma_in, Complex alpha,
                        Complex beta);

/// Image of a classical mixture sum w_i |θ_i><θ_i| (weights on coherent
/// amplitudes of a common cutoff).
DensityState beam_split_mixture(
    const std::vector<std::pair<double, CoherentVector>>& components,
    BeamSplitMode mode, Complex alpha, Complex beta);

/// Image of a finite linear combination sum c_i |θ_i>; not renormalized
/// (the splitting is isometric, so a normalized input stays normalized).
BipartiteKet beam_split_linear(
    const std::vector<std::pair<Complex, CoherentVector>>& terms,
    BeamSplitMode mode, Complex alpha, Complex beta);

double mean_photon_number(const BipartiteKet& ket, int factor);

/// Lifting wrapper around beam_split for plain/superposed modes. apply
/// recovers the amplitude via tr(rho a) and requires the input to be a
/// coherent state at the declared cutoff within match_tol.
Lifting beam_splitting_lifting(BeamSplitMode mode, Complex alpha, Complex beta,
                               int cutoff, double match_tol = 1e-8);

}  // namespace qplift
