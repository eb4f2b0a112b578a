#pragma once

#include "qplift/operator.hpp"

namespace qplift {

/// Truncated-Fock mode operators on span{|0>, ..., |cutoff-1>}.
/// The creation operator annihilates the top level |cutoff-1>; commutation
/// relations therefore fail on the boundary rows and hold elsewhere.
Operator annihilation(int cutoff);
Operator creation(int cutoff);
Operator number_operator(int cutoff);

/// Quadratures q = (a + a†)/√2 and p = (a - a†)/(i√2).
Operator quadrature_q(int cutoff);
Operator quadrature_p(int cutoff);

}  // namespace qplift
