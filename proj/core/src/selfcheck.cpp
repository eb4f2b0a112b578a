#include "qplift/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qplift/adaptive.hpp"
#include "qplift/case_studies.hpp"
#include "qplift/channels.hpp"
#include "qplift/coherent.hpp"
#include "qplift/density.hpp"
#include "qplift/event_system.hpp"
#include "qplift/fock.hpp"
#include "qplift/lifting.hpp"
#include "qplift/operator.hpp"
#include "qplift/projection.hpp"

namespace qplift {

namespace {

using Rng = std::mt19937_64;

Matrix random_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

Vector random_ket(Rng& rng, int d) {
  Vector v;
  do {
    v = random_matrix(rng, d, 1);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

Matrix random_unitary(Rng& rng, int d) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, d, d));
  return qr.householderQ() * Matrix::Identity(d, d);
}

DensityState random_density(Rng& rng, std::vector<int> dims, int rank) {
  int d = product_of_dims(dims);
  Matrix g = random_matrix(rng, d, rank);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityState(Operator(std::move(dims), std::move(m)));
}

Projection random_projection(Rng& rng, int d, int rank) {
  Matrix u = random_unitary(rng, d);
  Matrix m = u.leftCols(rank) * u.leftCols(rank).adjoint();
  return Projection(Operator({d}, std::move(m)));
}

// Projection pairs whose sum has an eigenvalue just below 2 make the meet
// threshold ambiguous; such draws are rejected, not fought.
bool lattice_degenerate(const Projection& e, const Projection& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(e.matrix() + f.matrix(),
                                           Eigen::EigenvaluesOnly);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double defect = 2.0 - es.eigenvalues()(i);
    if (defect > 1e-10 && defect < 1e-5) return true;
  }
  return false;
}

KrausChannel random_tp_channel(Rng& rng, int d, int n_kraus) {
  // QR of a (d*n) x d Ginibre block gives an isometry; its d x d slices are
  // Kraus operators of a trace-preserving channel.
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, d * n_kraus, d));
  Matrix iso = qr.householderQ() * Matrix::Identity(d * n_kraus, d);
  std::vector<Operator> ops;
  for (int i = 0; i < n_kraus; ++i) {
    ops.emplace_back(std::vector<int>{d}, Matrix(iso.middleRows(i * d, d)));
  }
  return KrausChannel(std::move(ops));
}

EventSystem random_projective(Rng& rng, int d, std::vector<std::string> labels) {
  Matrix u = random_unitary(rng, d);
  std::vector<Vector> kets;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) kets.push_back(u.col(i));
  // Labels must cover all d columns for completeness.
  return EventSystem::projective(std::move(labels), kets);
}

std::vector<std::string> index_labels(const std::string& stem, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

CheckResult tensor_suite(Rng& rng) {
  double worst = 0.0;
  for (int it = 0; it < 25; ++it) {
    int da = 2 + static_cast<int>(rng() % 2), db = 2 + static_cast<int>(rng() % 2);
    Operator a({da}, random_matrix(rng, da, da));
    Operator b({db}, random_matrix(rng, db, db));
    Operator ab = tensor(a, b);
    worst = std::max(worst, std::abs(ab.matrix().trace() -
                                     a.matrix().trace() * b.matrix().trace()));
    worst = std::max(worst, (ab.adjoint().matrix() -
                             tensor(a.adjoint(), b.adjoint()).matrix())
                                .cwiseAbs()
                                .maxCoeff());
    if (ab.total_dim() != da * db) worst = std::max(worst, 1.0);
  }
  return {"operator_core.tensor", worst <= 1e-10, worst,
          "trace multiplicativity and adjoint distribution, 25 draws"};
}

CheckResult partial_trace_suite(Rng& rng) {
  double worst = 0.0;
  for (int it = 0; it < 25; ++it) {
    DensityState rho = random_density(rng, {2, 3}, 4);
    DensityState m0 = partial_trace(rho, 0);
    DensityState m1 = partial_trace(rho, 1);
    worst = std::max(worst, std::abs(m0.matrix().trace().real() - 1.0));
    worst = std::max(worst, std::abs(m1.matrix().trace().real() - 1.0));

    Matrix e = random_matrix(rng, 2, 2);
    e = Matrix(0.5 * (e + e.adjoint()));
    Operator eop({2}, e);
    Operator lifted({2, 3},
                    Eigen::kroneckerProduct(e, Matrix::Identity(3, 3)));
    worst = std::max(worst, std::abs(real_expectation(rho, lifted) -
                                     real_expectation(m0, eop)));
  }
  return {"operator_core.partial_trace", worst <= 1e-10, worst,
          "marginal traces and expectation consistency on C2xC3, 25 draws"};
}

CheckResult lattice_suite(Rng& rng) {
  double worst = 0.0;
  for (int it = 0; it < 30; ++it) {
    int d = 4;
    Projection e = random_projection(rng, d, 1 + static_cast<int>(rng() % 3));
    Projection f = random_projection(rng, d, 1 + static_cast<int>(rng() % 3));
    if (lattice_degenerate(e, f)) {
      --it;
      continue;
    }
    Projection meet = meet_projection(e, f);
    Projection join = join_projection(e, f);
    worst = std::max(worst,
                     (e.matrix() * meet.matrix() - meet.matrix()).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (f.matrix() * meet.matrix() - meet.matrix()).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (join.matrix() * e.matrix() - e.matrix()).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (join.matrix() * f.matrix() - f.matrix()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (meet_projection(e, e).matrix() - e.matrix())
                                .cwiseAbs()
                                .maxCoeff());
    worst = std::max(worst, (meet_projection(e, f).matrix() -
                             meet_projection(f, e).matrix())
                                .cwiseAbs()
                                .maxCoeff());
  }
  return {"operator_core.lattice", worst <= 1e-7, worst,
          "meet/join containment, idempotency, symmetry in C4, 30 draws"};
}

CheckResult conditioning_suite(Rng& rng) {
  double worst = 0.0;
  for (int it = 0; it < 25; ++it) {
    int d = 3 + static_cast<int>(rng() % 2);
    DensityState rho = random_density(rng, {d}, d);
    EventSystem events = random_projective(rng, d, index_labels("e", d));
    double total = 0.0;
    for (std::size_t k = 0; k < events.size(); ++k) {
      total += real_expectation(rho, events.effect(k));
    }
    worst = std::max(worst, std::abs(total - 1.0));

    // Commuting pair: both diagonal in one random basis, so the two
    // conditional probabilities must coincide.
    Matrix u = random_unitary(rng, d);
    Matrix pe = u.leftCols(2) * u.leftCols(2).adjoint();
    Matrix pf = u.col(0) * u.col(0).adjoint() + u.col(2) * u.col(2).adjoint();
    Projection e(Operator({d}, pe)), f(Operator({d}, pf));
    CondProbComparison cmp = commuting_equivalence_check(rho, e, f);
    worst = std::max(worst, std::abs(cmp.difference));
  }
  return {"channels.conditioning", worst <= 1e-9, worst,
          "event completeness and commuting-pair agreement, 25 draws"};
}

CheckResult kraus_suite(Rng& rng) {
  double worst = 0.0;
  for (int it = 0; it < 15; ++it) {
    int d = 2 + static_cast<int>(rng() % 3);
    KrausChannel ch = random_tp_channel(rng, d, 2 + static_cast<int>(rng() % 2));
    if (!ch.trace_preserving()) worst = std::max(worst, 1.0);
    DensityState rho = random_density(rng, {d}, d);
    DensityState out = apply_kraus(ch, rho);
    worst = std::max(worst, std::abs(out.matrix().trace().real() - 1.0));
    worst = std::max(worst,
                     (out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff());
  }
  return {"channels.kraus", worst <= 1e-10, worst,
          "trace preservation through random channels, 15 draws"};
}

CheckResult compound_suite(Rng& rng) {
  double worst = 0.0;
  for (int it = 0; it < 15; ++it) {
    int d = 2 + static_cast<int>(rng() % 2);
    KrausChannel ch = random_tp_channel(rng, d, 2);
    Lifting lift = compound_lifting(ch);
    DensityState rho = random_density(rng, {d}, d);
    auto [m1, m2] = marginal_channels(lift, rho);
    worst = std::max(worst, (m1.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    worst = std::max(worst, (m2.matrix() - apply_kraus(ch, rho).matrix())
                                .cwiseAbs()
                                .maxCoeff());
    NondemolitionCheck nd = is_nondemolition(lift, rho);
    if (!nd.nondemolition) worst = std::max(worst, nd.deviation);
  }
  return {"liftings.compound", worst <= 1e-9, worst,
          "nondemolition marginal and channel marginal, 15 draws"};
}

CheckResult beam_split_suite(Rng& rng) {
  double worst = 0.0;
  std::uniform_real_distribution<double> mag(0.2, 1.8), ang(0.0, 6.28318),
      ratio(0.1, 0.9);
  for (int it = 0; it < 10; ++it) {
    Complex theta = std::polar(mag(rng), ang(rng));
    double asq = ratio(rng);
    Complex alpha = std::polar(std::sqrt(asq), ang(rng));
    Complex beta = std::polar(std::sqrt(1.0 - asq), ang(rng));

    CoherentVector in = coherent_vector(theta);
    BipartiteKet split = beam_split(in, BeamSplitMode::plain, alpha, beta);
    double total = mean_photon_number(split, 0) + mean_photon_number(split, 1);
    worst = std::max(worst, std::abs(total - std::norm(theta)));
    worst = std::max(worst, std::abs(mean_photon_number(split, 0) -
                                     std::norm(alpha * theta)));

    Complex theta2 = std::polar(mag(rng), ang(rng));
    int cutoff = std::max(coherent_default_cutoff(theta),
                          coherent_default_cutoff(theta2));
    Complex overlap = coherent_overlap(coherent_vector(theta, cutoff),
                                       coherent_vector(theta2, cutoff));
    Complex oracle = std::exp(Complex(-0.5 * (std::norm(theta) + std::norm(theta2)), 0.0) +
                              std::conj(theta) * theta2);
    worst = std::max(worst, std::abs(overlap - oracle));

    // For conjugate branch pairs the branch overlap is real, so the
    // superposed combination is already of unit norm.
    BipartiteKet sup = beam_split(in, BeamSplitMode::superposed, alpha, beta);
    worst = std::max(worst, std::abs(sup.branch_norm - 1.0));
  }
  return {"liftings.beam_split", worst <= 1e-7, worst,
          "photon bookkeeping and overlap law, |theta| <= 1.8, 10 draws"};
}

CheckResult adaptive_suite(Rng& rng) {
  double worst = 0.0;
  for (int it = 0; it < 20; ++it) {
    int d = 2 + static_cast<int>(rng() % 3);
    DensityState rho = random_density(rng, {d}, d);
    EventSystem first = random_projective(rng, d, index_labels("a", d));
    EventSystem second = random_projective(rng, d, index_labels("b", d));
    JointTable seq = sequential_joint_table(rho, first, second);
    worst = std::max(worst, std::abs(seq.total() - 1.0));
    auto cols = seq.col_sums();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      worst = std::max(worst, std::abs(cols[k] - real_expectation(rho, first.effect(k))));
    }

    // Independent composition: product lifting must factorize the table.
    DensityState sigma = random_density(rng, {d}, 1);
    AdaptiveScenario sc(rho, product_lifting(d, sigma), first, second);
    JointTable joint = joint_like_table(sc);
    worst = std::max(worst, std::abs(joint.total() - 1.0));
    for (std::size_t j = 0; j < second.size(); ++j) {
      for (std::size_t k = 0; k < first.size(); ++k) {
        double expected = real_expectation(rho, second.effect(j)) *
                          real_expectation(sigma, first.effect(k));
        worst = std::max(worst, std::abs(joint.entries(j, k) - expected));
      }
    }
  }
  return {"adaptive.tables", worst <= 1e-10, worst,
          "sequential-table laws and product factorization, 20 draws"};
}

CheckResult tongue_suite(Rng& rng) {
  double worst = 0.0;
  std::uniform_real_distribution<double> unit(0.05, 0.95), ang(0.0, 6.28318);
  for (int it = 0; it < 30; ++it) {
    double lsq = unit(rng), msq = unit(rng);
    TongueParams p;
    p.lambda1 = std::polar(std::sqrt(lsq), ang(rng));
    p.lambda2 = std::polar(std::sqrt(1.0 - lsq), ang(rng));
    p.mu1 = std::polar(std::sqrt(msq), ang(rng));
    p.mu2 = std::polar(std::sqrt(1.0 - msq), ang(rng));
    ScenarioReport r = tongue_scenario(p);
    worst = std::max(worst, r.diagnostics[0].second);  // closed_form_dev

    TongueParams sym = p;
    sym.lambda1 = std::polar(1.0 / std::sqrt(2.0), ang(rng));
    sym.lambda2 = std::polar(1.0 / std::sqrt(2.0), ang(rng));
    worst = std::max(worst, std::abs(tongue_scenario(sym).gap));
  }
  return {"case_studies.tongue", worst <= 1e-10, worst,
          "pipeline matches closed form; neutral sugar closes the gap, 30 draws"};
}

CheckResult lactose_suite(Rng& rng) {
  double worst = 0.0;
  std::uniform_real_distribution<double> unit(0.05, 0.95), logr(-3.0, 1.3);
  for (int it = 0; it < 30; ++it) {
    double r_true = std::pow(10.0, logr(rng));
    LactoseParams p = LactoseParams::from_reals(unit(rng), unit(rng), unit(rng), r_true);
    ScenarioReport rep = lactose_scenario(p);
    worst = std::max(worst, rep.diagnostics[0].second);  // closed_form_dev

    double target = lactose_activation_closed_form(p);
    if (target > 1e-4 && target < 1.0 - 1e-4) {
      PreferenceFit fit = fit_preference_ratio(p, target);
      double best = 1e300;
      for (double root : fit.roots) {
        best = std::min(best, std::abs(root - r_true) / std::max(1.0, r_true));
      }
      worst = std::max(worst, best <= 1e-6 ? 0.0 : best);
    }
  }
  return {"case_studies.lactose", worst <= 1e-10, worst,
          "pipeline matches closed form; fit recovers the drawn ratio, 30 draws"};
}

CheckResult bayes_suite(Rng& rng) {
  double worst = 0.0;
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int it = 0; it < 25; ++it) {
    double pa = unit(rng), pca = unit(rng), pcb = unit(rng);
    BayesParams p = BayesParams::rational(pa, pca, pcb);
    BayesPosterior post = bayes_update(p, BayesObservation::C);
    double classical = pca * pa / (pca * pa + pcb * (1.0 - pa));
    worst = std::max(worst, std::abs(post.posterior_A - classical));

    BiasedBayesReport unbiased = biased_bayes_update(p, BayesObservation::C);
    worst = std::max(worst, std::abs(unbiased.posterior_A - post.posterior_A));

    double s = unit(rng);
    Matrix sigma = Matrix::Zero(2, 2);
    sigma(0, 0) = 1.0 - s;
    sigma(1, 1) = s;
    p.bias_state = DensityState(Operator({2}, sigma));
    p.bias_isometry = bias_conditional_mind_swap();
    BiasedBayesReport swapped = biased_bayes_update(p, BayesObservation::C);
    worst = std::max(worst, std::abs(swapped.prior_delta_A));
    double p_C = pca * pa + pcb * (1.0 - pa);
    worst = std::max(worst, std::abs(swapped.gap_C - s * (p_C - (1.0 - p_C))));
  }
  return {"case_studies.bayes", worst <= 1e-10, worst,
          "classical agreement, unbiased limit, mind-swap laws, 25 draws"};
}

}  // namespace

std::vector<CheckResult> run_selfchecks(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  out.push_back(tensor_suite(rng));
  out.push_back(partial_trace_suite(rng));
  out.push_back(lattice_suite(rng));
  out.push_back(conditioning_suite(rng));
  out.push_back(kraus_suite(rng));
  out.push_back(compound_suite(rng));
  out.push_back(beam_split_suite(rng));
  out.push_back(adaptive_suite(rng));
  out.push_back(tongue_suite(rng));
  out.push_back(lactose_suite(rng));
  out.push_back(bayes_suite(rng));
  return out;
}

}  // namespace qplift
