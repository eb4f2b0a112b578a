#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include <qplift/density.hpp>
#include <qplift/event_system.hpp>
#include <qplift/fock.hpp>
#include <qplift/operator.hpp>
#include <qplift/projection.hpp>
#include <qplift/validation.hpp>

#include "helpers.hpp"

using namespace qplift;
using test_helpers::max_abs;
using test_helpers::max_abs_diff;

namespace {
const Complex I{0.0, 1.0};

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Vector ket(std::initializer_list<Complex> entries) {
  Vector v(static_cast<int>(entries.size()));
  int i = 0;
  for (Complex c : entries) v(i++) = c;
  return v;
}
}  // namespace

TEST_CASE("operator construction enforces shape") {
  CHECK_THROWS_AS(Operator({2}, Matrix::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(Operator({2, 2}, Matrix::Zero(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Operator({}, Matrix::Zero(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(Operator({0}, Matrix::Zero(0, 0)), std::invalid_argument);

  Operator a({2, 3}, Matrix::Identity(6, 6));
  CHECK(a.total_dim() == 6);
  CHECK(a.dims() == std::vector<int>{2, 3});
}

TEST_CASE("tensor product is the Kronecker product with factor 0 slowest") {
  // Hand-expanded: (sigma_z tensor sigma_x)(i,j) blocks are z_ii * X.
  Operator z({2}, pauli_z());
  Operator x({2}, pauli_x());
  Operator zx = tensor(z, x);
  Matrix expected(4, 4);
  expected << 0, 1, 0, 0,  //
      1, 0, 0, 0,          //
      0, 0, 0, -1,         //
      0, 0, -1, 0;
  CHECK(max_abs_diff(zx.matrix(), expected) == 0.0);
  CHECK(zx.dims() == std::vector<int>{2, 2});

  // tr(a tensor b) = tr(a) tr(b) and (a tensor b)† = a† tensor b†.
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    Operator a({2}, test_helpers::random_matrix(rng, 2, 2));
    Operator b({3}, test_helpers::random_matrix(rng, 3, 3));
    Operator ab = tensor(a, b);
    CHECK(std::abs(ab.matrix().trace() -
                   a.matrix().trace() * b.matrix().trace()) <= 1e-12);
    CHECK(max_abs_diff(ab.adjoint().matrix(),
                       tensor(a.adjoint(), b.adjoint()).matrix()) <= 1e-14);
  }
}

TEST_CASE("reshaped changes bookkeeping only") {
  std::mt19937_64 rng(11);
  Matrix m = test_helpers::random_matrix(rng, 6, 6);
  Operator a({6}, m);
  Operator b = a.reshaped({2, 3});
  CHECK(b.dims() == std::vector<int>{2, 3});
  CHECK(max_abs_diff(a.matrix(), b.matrix()) == 0.0);
  CHECK_THROWS_AS(a.reshaped({2, 2}), std::invalid_argument);
}

TEST_CASE("hermiticity defect measures the worst entry") {
  Matrix m(2, 2);
  m << 1, Complex{0, 0.25}, Complex{0, 0.25}, 1;  // anti-hermitian off-diagonal
  Operator a({2}, m);
  // |M - M†| has off-diagonal magnitude |i/4 - (-i/4)| = 1/2.
  CHECK(a.hermiticity_defect() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(a.is_hermitian());
  CHECK(Operator({2}, pauli_x()).is_hermitian());
}

TEST_CASE("density construction enforces state invariants") {
  Matrix ok(2, 2);
  ok << 0.25, 0, 0, 0.75;
  CHECK_NOTHROW(DensityState(Operator({2}, ok)));

  Matrix bad_trace = 2.0 * ok;
  CHECK_THROWS_AS(DensityState(Operator({2}, bad_trace)), std::invalid_argument);

  Matrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityState(Operator({2}, negative)), std::invalid_argument);

  Matrix non_hermitian(2, 2);
  non_hermitian << 0.5, 0.3, 0, 0.5;
  CHECK_THROWS_AS(DensityState(Operator({2}, non_hermitian)),
                  std::invalid_argument);

  DensityState::Options renorm;
  renorm.renormalize_trace = true;
  DensityState r(Operator({2}, bad_trace), renorm);
  CHECK(std::abs(r.matrix().trace() - 1.0) <= 1e-14);

  CHECK_THROWS_AS(DensityState::pure(ket({1, 1}), {2}), std::invalid_argument);
  DensityState plus = DensityState::pure(ket({1, 1}) / std::sqrt(2.0), {2});
  CHECK(plus.matrix()(0, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial trace of a product state returns the factors") {
  std::mt19937_64 rng(13);
  DensityState rho = test_helpers::random_density(rng, {2});
  DensityState sig = test_helpers::random_density(rng, {3});
  DensityState prod = unchecked_density(tensor(rho.op(), sig.op()));
  CHECK(max_abs_diff(partial_trace(prod, 0).matrix(), rho.matrix()) <= 1e-12);
  CHECK(max_abs_diff(partial_trace(prod, 1).matrix(), sig.matrix()) <= 1e-12);
}

TEST_CASE("partial trace of an entangled pure state is maximally mixed") {
  // (|00> + |11>)/sqrt(2): both marginals are I/2 exactly.
  Vector bell = ket({1, 0, 0, 1}) / std::sqrt(2.0);
  DensityState rho = DensityState::pure(bell, {2, 2});
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK(max_abs_diff(partial_trace(rho, 0).matrix(), half) <= 1e-14);
  CHECK(max_abs_diff(partial_trace(rho, 1).matrix(), half) <= 1e-14);
  CHECK_THROWS_AS(partial_trace(partial_trace(rho, 0), 0),
                  std::invalid_argument);
}

TEST_CASE("trace_out_factor keeps the remaining factor structure") {
  // (|000> + |111>)/sqrt(2): dropping any one factor leaves the classical
  // correlation (|00><00| + |11><11|)/2.
  Vector ghz = Vector::Zero(8);
  ghz(0) = 1.0 / std::sqrt(2.0);
  ghz(7) = 1.0 / std::sqrt(2.0);
  DensityState rho = DensityState::pure(ghz, {2, 2, 2});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  for (int drop = 0; drop < 3; ++drop) {
    DensityState reduced = trace_out_factor(rho, drop);
    CHECK(reduced.dims() == std::vector<int>{2, 2});
    CHECK(max_abs_diff(reduced.matrix(), expected) <= 1e-14);
  }
}

TEST_CASE("expectation values on fixed states") {
  Matrix diag(2, 2);
  diag << 0.25, 0, 0, 0.75;
  DensityState rho(Operator({2}, diag));
  CHECK(std::abs(expectation(rho, Operator({2}, pauli_x()))) <= 1e-15);
  // tr(rho sigma_z) = 0.25 - 0.75.
  CHECK(real_expectation(rho, Operator({2}, pauli_z())) ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("projection construction enforces idempotency") {
  CHECK_THROWS_AS(Projection(Operator({2}, 0.5 * Matrix::Identity(2, 2))),
                  std::invalid_argument);
  Projection p = Projection::onto_unit_vector(ket({1, I}) / std::sqrt(2.0));
  CHECK(p.rank() == 1);
  CHECK(max_abs_diff(p.matrix() * p.matrix(), p.matrix()) <= 1e-14);
  CHECK(Projection::zero({3}).rank() == 0);
  CHECK(Projection::identity({3}).rank() == 3);
}

TEST_CASE("meet and join of commuting block projections") {
  // Diagonal ranges: meet keeps the shared axis, join the union.
  Matrix e = Matrix::Zero(4, 4), f = Matrix::Zero(4, 4);
  e(0, 0) = e(1, 1) = 1;
  f(1, 1) = f(2, 2) = 1;
  Projection pe(Operator({4}, e)), pf(Operator({4}, f));

  Matrix meet_expected = Matrix::Zero(4, 4);
  meet_expected(1, 1) = 1;
  Matrix join_expected = Matrix::Zero(4, 4);
  join_expected(0, 0) = join_expected(1, 1) = join_expected(2, 2) = 1;

  CHECK(max_abs_diff(meet_projection(pe, pf).matrix(), meet_expected) <= 1e-10);
  CHECK(max_abs_diff(join_projection(pe, pf).matrix(), join_expected) <= 1e-10);
}

TEST_CASE("meet of skew rank-one projections is zero, join is the plane") {
  // Non-commuting pair at 45 degrees: ranges intersect only at the origin.
  Projection px = Projection::onto_unit_vector(ket({1, 0}));
  Projection pz = Projection::onto_unit_vector(ket({1, 1}) / std::sqrt(2.0));
  CHECK(meet_projection(px, pz).rank() == 0);
  CHECK(join_projection(px, pz).rank() == 2);
  CHECK(max_abs_diff(join_projection(px, pz).matrix(), Matrix::Identity(2, 2)) <=
        1e-10);
}

TEST_CASE("meet agrees with the alternating-conjugation oracle") {
  std::mt19937_64 rng(101);
  int accepted = 0;
  while (accepted < 20) {
    Projection e = test_helpers::random_projection(rng, 5, 2);
    Projection f = test_helpers::random_projection(rng, 5, 3);
    // The oracle converges only when principal angles are bounded away from
    // zero without being zero; redraw the ambiguous pairs.
    if (!test_helpers::meet_oracle_converged(e.matrix(), f.matrix())) continue;
    ++accepted;
    Matrix oracle = test_helpers::meet_power_oracle(e.matrix(), f.matrix());
    Matrix lib = meet_projection(e, f).matrix();
    CHECK(max_abs_diff(lib, oracle) <= 1e-6);
  }
}

TEST_CASE("join invariants on random pairs") {
  std::mt19937_64 rng(103);
  for (int it = 0; it < 20; ++it) {
    Projection e = test_helpers::random_projection(rng, 5, 2);
    Projection f = test_helpers::random_projection(rng, 5, 2);
    Projection j = join_projection(e, f);
    // Join dominates both arguments: J E = E, J F = F.
    CHECK(max_abs_diff(j.matrix() * e.matrix(), e.matrix()) <= 1e-9);
    CHECK(max_abs_diff(j.matrix() * f.matrix(), f.matrix()) <= 1e-9);
    // Generic ranges in dimension 5 are linearly independent.
    CHECK(j.rank() == 4);
  }
}

TEST_CASE("event system enforces completeness and positivity") {
  Matrix e0 = Matrix::Zero(2, 2), e1 = Matrix::Zero(2, 2);
  e0(0, 0) = 1;
  e1(1, 1) = 1;
  CHECK_NOTHROW(EventSystem({"a", "b"}, {Operator({2}, e0), Operator({2}, e1)}));
  CHECK_THROWS_AS(EventSystem({"a"}, {Operator({2}, e0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      EventSystem({"a", "b"}, {Operator({2}, e0), Operator({2}, 0.5 * e1)}),
      std::invalid_argument);
  CHECK_THROWS_AS(EventSystem({"a", "b", "c"},
                              {Operator({2}, e0), Operator({2}, e1)}),
                  std::invalid_argument);

  EventSystem sys = EventSystem::projective(
      {"plus", "minus"},
      {ket({1, 1}) / std::sqrt(2.0), ket({1, -1}) / std::sqrt(2.0)});
  CHECK(sys.size() == 2);
  CHECK(sys.dim() == 2);
  CHECK(sys.label(1) == "minus");
  CHECK_THROWS_AS(EventSystem::projective(
                      {"p", "q"},
                      {ket({1, 0}), ket({1, 1}) / std::sqrt(2.0)}),
                  std::invalid_argument);
}

TEST_CASE("validation reports name failing invariants without throwing") {
  Matrix bad(2, 2);
  bad << 1.5, 0, 0, 0.6;  // trace 2.1, positive, hermitian
  ValidationReport report = validate_density(Operator({2}, bad));
  CHECK_FALSE(report.all_pass());
  bool found_trace_failure = false;
  for (const ValidationCheck& c : report.checks)
    if (!c.pass && c.name.find("trace") != std::string::npos)
      found_trace_failure = true;
  CHECK(found_trace_failure);
  CHECK(report.worst_deviation() >= 1.0);
  CHECK(report.to_string().find("trace") != std::string::npos);
}

TEST_CASE("fock ladder operators on the truncated space") {
  Operator a = annihilation(4);
  // a |n> = sqrt(n) |n-1>.
  CHECK(a.matrix()(0, 1).real() == doctest::Approx(1.0));
  CHECK(a.matrix()(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a.matrix()(2, 3).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(max_abs_diff(creation(4).matrix(), a.adjoint().matrix()) == 0.0);

  // N = a† a holds exactly even on the truncated space.
  CHECK(max_abs_diff(number_operator(4).matrix(),
                     a.adjoint().matrix() * a.matrix()) <= 1e-14);

  // [a, a†] = I away from the top level; the defect sits at the corner,
  // where the commutator entry is -(cutoff - 1) instead of 1.
  Matrix comm = a.matrix() * a.adjoint().matrix() -
                a.adjoint().matrix() * a.matrix();
  for (int n = 0; n < 3; ++n)
    CHECK(std::abs(comm(n, n) - 1.0) <= 1e-14);
  CHECK(std::abs(comm(3, 3) + 3.0) <= 1e-14);

  // Quadratures are hermitian and satisfy [q, p] = i I on the interior.
  Operator q = quadrature_q(6), p = quadrature_p(6);
  CHECK(q.is_hermitian());
  CHECK(p.is_hermitian());
  Matrix qp = q.matrix() * p.matrix() - p.matrix() * q.matrix();
  for (int n = 0; n < 5; ++n)
    CHECK(std::abs(qp(n, n) - Complex{0, 1}) <= 1e-13);
}
