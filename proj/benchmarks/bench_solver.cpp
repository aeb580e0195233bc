#include <benchmark/benchmark.h>

#include <random>

#include "qsync/lindblad.hpp"
#include "qsync/models.hpp"
#include "qsync/operators.hpp"

namespace {

using namespace qsync;

LindbladModel random_model(int dim) {
  std::mt19937_64 rng(1234 + dim);
  std::normal_distribution<double> normal;
  const auto matrix = [&] {
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        m(r, c) = Complex(normal(rng), normal(rng));
      }
    }
    return m;
  };
  LindbladModel model;
  model.dim = dim;
  const Eigen::MatrixXcd g = matrix();
  model.hamiltonian.push_back({0.5 * (g + g.adjoint()), 1.0, false});
  model.dissipators.push_back({matrix(), 0.3});
  model.dissipators.push_back({matrix(), 0.1});
  return model;
}

void bench_build_liouvillian(benchmark::State& state) {
  const LindbladModel model = random_model(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_liouvillian(model));
  }
}
BENCHMARK(bench_build_liouvillian)->DenseRange(2, 8);

void bench_steady_state(benchmark::State& state) {
  const Eigen::MatrixXcd lio =
      build_liouvillian(random_model(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state(lio));
  }
}
BENCHMARK(bench_steady_state)->DenseRange(2, 8);

void bench_evolve_spin1(benchmark::State& state) {
  const LindbladModel model = spin1_model(0.0, 0.01, 0.1, 0.1);
  const DensityMatrix rho0(Eigen::MatrixXcd::Identity(3, 3) / 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(model, rho0, 10.0, 0.01));
  }
}
BENCHMARK(bench_evolve_spin1);

}  // namespace

BENCHMARK_MAIN();
