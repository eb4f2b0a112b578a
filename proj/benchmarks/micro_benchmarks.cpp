#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include <qplift/case_studies.hpp>
#include <qplift/channels.hpp>
#include <qplift/coherent.hpp>
#include <qplift/density.hpp>
#include <qplift/operator.hpp>
#include <qplift/projection.hpp>

namespace {

using namespace qplift;

Matrix seeded_matrix(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

DensityState seeded_density(std::mt19937_64& rng, std::vector<int> dims) {
  int d = product_of_dims(dims);
  Matrix g = seeded_matrix(rng, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityState(Operator(std::move(dims), rho));
}

Projection seeded_projection(std::mt19937_64& rng, int dim, int rank) {
  Eigen::HouseholderQR<Matrix> qr(seeded_matrix(rng, dim));
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix basis = q.leftCols(rank);
  return Projection(Operator({dim}, basis * basis.adjoint()));
}

void bm_tensor_product(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  Operator a({dim}, seeded_matrix(rng, dim));
  Operator b({dim}, seeded_matrix(rng, dim));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensor(a, b));
  }
}
BENCHMARK(bm_tensor_product)->Arg(4)->Arg(16);

void bm_partial_trace(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(12);
  DensityState rho = seeded_density(rng, {dim, dim});
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(rho, 0));
  }
}
BENCHMARK(bm_partial_trace)->Arg(4)->Arg(8);

void bm_meet_projection(benchmark::State& state) {
  int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(13);
  Projection e = seeded_projection(rng, dim, dim / 2);
  Projection f = seeded_projection(rng, dim, dim / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(meet_projection(e, f));
  }
}
BENCHMARK(bm_meet_projection)->Arg(8)->Arg(16);

void bm_reduction_channel(benchmark::State& state) {
  std::mt19937_64 rng(14);
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  ReductionSpec spec(Operator({2, 2}, swap), seeded_density(rng, {2}), 0.7);
  DensityState rho = seeded_density(rng, {2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduction_channel(spec, rho));
  }
}
BENCHMARK(bm_reduction_channel);

void bm_beam_split_plain(benchmark::State& state) {
  CoherentVector input = coherent_vector(Complex(1.2, -0.4), 40);
  Complex alpha(0.6, 0.0), beta(0.0, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(beam_split(input, BeamSplitMode::plain, alpha, beta));
  }
}
BENCHMARK(bm_beam_split_plain);

void bm_lactose_pipeline(benchmark::State& state) {
  LactoseParams params = LactoseParams::from_reals(0.8, 2920.0 / 3000.0,
                                                   33.0 / 3000.0, 0.00778);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lactose_scenario(params));
  }
}
BENCHMARK(bm_lactose_pipeline);

}  // namespace

BENCHMARK_MAIN();
