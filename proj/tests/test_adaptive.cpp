#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include <qplift/adaptive.hpp>
#include <qplift/density.hpp>
#include <qplift/event_system.hpp>
#include <qplift/lifting.hpp>
#include <qplift/operator.hpp>

#include "helpers.hpp"

using namespace qplift;
using test_helpers::max_abs_diff;

namespace {

Vector ket2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

EventSystem computational() {
  return EventSystem::projective({"0", "1"}, {ket2(1, 0), ket2(0, 1)});
}

EventSystem hadamard_basis() {
  return EventSystem::projective(
      {"+", "-"},
      {ket2(1, 1) / std::sqrt(2.0), ket2(1, -1) / std::sqrt(2.0)});
}

}  // namespace

TEST_CASE("total probability composition arithmetic") {
  // 0.2 * 0.5 + 0.9 * 0.5 = 0.55 against a target of 0.3.
  GapReport g = total_probability_gap(0.3, {0.2, 0.9}, {0.5, 0.5});
  CHECK(g.rhs == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(g.gap == doctest::Approx(-0.25).epsilon(1e-12));

  CHECK_THROWS_AS(total_probability_gap(0.3, {0.2}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(total_probability_gap(0.3, {0.2, 0.9}, {0.5, 0.4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(total_probability_gap(0.3, {}, {}), std::invalid_argument);
}

TEST_CASE("sequential table for the plus state breaks the row law") {
  // rho = |+><+|, first = computational, second = the +/- basis. Each first
  // outcome collapses to a basis state, which splits 50/50 on the second
  // question: all four entries are exactly 1/4. Row sums are then 1/2 while
  // tr(rho E_+) = 1 and tr(rho E_-) = 0: the mismatch is the adaptive effect.
  DensityState plus = DensityState::pure(ket2(1, 1) / std::sqrt(2.0), {2});
  JointTable t = sequential_joint_table(plus, computational(), hadamard_basis());

  CHECK(t.row_labels == std::vector<std::string>{"+", "-"});
  CHECK(t.col_labels == std::vector<std::string>{"0", "1"});
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      CHECK(t.entries(j, k) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(t.total() == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> rows = t.row_sums();
  CHECK(rows[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.row_mismatch[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(t.row_mismatch[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Column sums always reproduce the first-measurement probabilities.
  std::vector<double> cols = t.col_sums();
  CHECK(cols[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cols[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sequential table is classical for commuting measurements") {
  Matrix rho(2, 2);
  rho << 0.3, 0, 0, 0.7;
  DensityState state(Operator({2}, rho));
  JointTable t = sequential_joint_table(state, computational(), computational());
  CHECK(t.entries(0, 0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(t.entries(1, 1) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(std::abs(t.entries(0, 1)) <= 1e-14);
  CHECK(std::abs(t.entries(1, 0)) <= 1e-14);
  CHECK(std::abs(t.row_mismatch[0]) <= 1e-12);
  CHECK(std::abs(t.row_mismatch[1]) <= 1e-12);
}

TEST_CASE("sequential laws hold for random states and bases") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 20; ++it) {
    DensityState rho = test_helpers::random_density(rng, {3});
    Matrix u = test_helpers::random_unitary(rng, 3);
    Matrix w = test_helpers::random_unitary(rng, 3);
    std::vector<Vector> first_kets{u.col(0), u.col(1), u.col(2)};
    std::vector<Vector> second_kets{w.col(0), w.col(1), w.col(2)};
    EventSystem first = EventSystem::projective({"a", "b", "c"}, first_kets);
    EventSystem second = EventSystem::projective({"x", "y", "z"}, second_kets);
    JointTable t = sequential_joint_table(rho, first, second);

    CHECK(std::abs(t.total() - 1.0) <= 1e-10);
    std::vector<double> cols = t.col_sums();
    for (int k = 0; k < 3; ++k) {
      double direct = real_expectation(rho, first.effect(k));
      CHECK(std::abs(cols[k] - direct) <= 1e-10);
    }
  }
}

TEST_CASE("joint-like table factorizes for a product lifting") {
  // E*rho = rho ⊗ sigma: P(a_k, b_j) = tr(rho E_j) tr(sigma F_k).
  Matrix rho_m(2, 2), sigma_m(2, 2);
  rho_m << 0.3, 0, 0, 0.7;
  sigma_m << 0.6, 0, 0, 0.4;
  DensityState rho(Operator({2}, rho_m));
  DensityState sigma(Operator({2}, sigma_m));

  AdaptiveScenario sc(rho, product_lifting(2, sigma), computational(),
                      computational());
  JointTable t = joint_like_table(sc);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      double expected = rho_m(j, j).real() * sigma_m(k, k).real();
      CHECK(t.entries(j, k) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(joint_like_probability(sc, j, k) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  CHECK(t.total() == doctest::Approx(1.0).epsilon(1e-12));
  // The lifted factor-1 marginal is rho itself, so the rows match exactly.
  CHECK(std::abs(t.row_mismatch[0]) <= 1e-12);
  CHECK(std::abs(t.row_mismatch[1]) <= 1e-12);
}

TEST_CASE("adaptive evolve returns the lifted state and its marginal") {
  Matrix rho_m(2, 2);
  rho_m << 0.25, 0.1, 0.1, 0.75;
  DensityState rho(Operator({2}, rho_m));
  std::mt19937_64 rng(37);
  DensityState sigma = test_helpers::random_density(rng, {2});

  AdaptiveScenario sc(rho, product_lifting(2, sigma), computational(),
                      computational());
  auto [lifted, marginal] = adaptive_evolve(sc);
  CHECK(lifted.dims() == std::vector<int>{2, 2});
  CHECK(max_abs_diff(marginal.matrix(), rho_m) <= 1e-12);
}

TEST_CASE("scenario construction rejects mismatched shapes") {
  DensityState rho = DensityState::pure(ket2(1, 0), {2});
  std::mt19937_64 rng(41);
  DensityState sigma3 = test_helpers::random_density(rng, {3});

  // Factor 2 has dimension 3, so a qubit system A cannot be read there.
  CHECK_THROWS_AS(AdaptiveScenario(rho, product_lifting(2, sigma3),
                                   computational(), computational()),
                  std::invalid_argument);

  // Lifting input dimension must match the initial state.
  DensityState sigma2 = test_helpers::random_density(rng, {2});
  CHECK_THROWS_AS(AdaptiveScenario(test_helpers::random_density(rng, {3}),
                                   product_lifting(2, sigma2), computational(),
                                   computational()),
                  std::invalid_argument);
}

TEST_CASE("custom combiners replace the tensor pairing") {
  DensityState rho = DensityState::pure(ket2(1, 1) / std::sqrt(2.0), {2});
  std::mt19937_64 rng(43);
  DensityState sigma = test_helpers::random_density(rng, {2});

  // Combiner that ignores system A: the table rows collapse to the factor-1
  // marginal probabilities repeated across columns.
  EffectCombiner ignore_a = [](const Operator& e, const Operator& f) {
    return tensor(e, Operator::identity(f.dims()));
  };
  AdaptiveScenario sc(rho, product_lifting(2, sigma), computational(),
                      computational(), ignore_a);
  CHECK_FALSE(sc.tensor_combiner());
  JointTable t = joint_like_table(sc);
  for (int j = 0; j < 2; ++j) {
    CHECK(t.entries(j, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.entries(j, 1) == doctest::Approx(0.5).epsilon(1e-12));
  }
  // Every column repeats the same event, so the table sums to the number of
  // columns rather than 1.
  CHECK(t.total() == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(sc.combined_effect(0, 5), std::out_of_range);
}
