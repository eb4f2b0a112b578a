#include "qplift/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qplift {

Operator annihilation(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("fock cutoff must be >= 1");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator({cutoff}, std::move(a));
}

Operator creation(int cutoff) { return annihilation(cutoff).adjoint(); }

Operator number_operator(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("fock cutoff must be >= 1");
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = static_cast<double>(k);
  return Operator({cutoff}, std::move(n));
}

Operator quadrature_q(int cutoff) {
  Matrix a = annihilation(cutoff).matrix();
  return Operator({cutoff}, (a + a.adjoint()) / std::sqrt(2.0));
}

Operator quadrature_p(int cutoff) {
  Matrix a = annihilation(cutoff).matrix();
  return Operator({cutoff}, (a - a.adjoint()) / Complex(0.0, std::sqrt(2.0)));
}

}  // namespace qplift
