#pragma once

#include <string>
#include <vector>

#include "qplift/operator.hpp"

namespace qplift {

/// Labeled POVM {(label_i, effect_i)}: effects hermitian, positive
/// semidefinite, summing to the identity (enforced at construction).
class EventSystem {
 public:
  EventSystem(std::vector<std::string> labels, std::vector<Operator> effects,
              double tol = 1e-10);

  /// Projective system from an orthonormal family of kets spanning the space.
  static EventSystem projective(std::vector<std::string> labels,
                                const std::vector<Vector>& kets);

  int size() const { return static_cast<int>(effects_.size()); }
  int dim() const { return effects_.front().total_dim(); }
  const std::string& label(int i) const { return labels_.at(i); }
  const Operator& effect(int i) const { return effects_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Operator>& effects() const { return effects_; }

 private:
  std::vector<std::string> labels_;
  std::vector<Operator> effects_;
};

}  // namespace qplift
