#include <benchmark/benchmark.h>

#include "qsync/lie_algebra.hpp"
#include "qsync/lindblad.hpp"
#include "qsync/models.hpp"
#include "qsync/sync_measure.hpp"

namespace {

using namespace qsync;

void bench_z_matrix(benchmark::State& state) {
  const CoherentFamily family = make_spin_family(static_cast<int>(state.range(0)));
  const Quadrature quad = make_quadrature(family, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(z_matrix(family, quad));
  }
}
BENCHMARK(bench_z_matrix)->DenseRange(2, 6);

void bench_sync_max_spin32(benchmark::State& state) {
  const CoherentFamily family = make_spin_family(4);
  const ZMatrix z = z_matrix(family, make_quadrature(family, 64));
  const DensityMatrix rho =
      steady_state(build_liouvillian(spin32_model(0, 0.01, 0, 0.1, 1.0, 0.1, 0.1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sync_max(family, z, rho, 16));
  }
}
BENCHMARK(bench_sync_max_spin32);

void bench_completeness_su3(benchmark::State& state) {
  const CoherentFamily family = make_su3_family();
  const Quadrature quad = make_quadrature(family, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_completeness(family, quad));
  }
}
BENCHMARK(bench_completeness_su3);

void bench_lie_closure_chain(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::vector<Operator> generators;
  Operator diag = Operator::Zero(dim, dim);
  for (int level = 0; level < dim; ++level) {
    diag(level, level) = level + 0.15 * level * level;
  }
  generators.push_back(diag);
  for (int level = 1; level < dim; ++level) {
    generators.push_back(transition_op(dim, level, level + 1) +
                         transition_op(dim, level + 1, level));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(lie_closure(generators, dim * dim - 1));
  }
}
BENCHMARK(bench_lie_closure_chain)->DenseRange(2, 6);

}  // namespace
