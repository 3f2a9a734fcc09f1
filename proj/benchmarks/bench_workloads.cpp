#include <benchmark/benchmark.h>

#include "crsim/descriptors.hpp"
#include "crsim/rng.hpp"
#include "crsim/tomography.hpp"
#include "crsim/vqe.hpp"

namespace {

using namespace crsim;

std::vector<double> random_params(int count, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> params(count);
  for (auto& p : params) p = rng.angle();
  return params;
}

void bm_pqc_prepare(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int layers = static_cast<int>(state.range(1));
  const Pqc pqc(build_pqc(n, layers, RotationSet::Ry,
                          Entangler::cr_angle(M_PI / 4, average_cr_coefficients())));
  const auto params = random_params(pqc.parameter_count(), 7);
  for (auto _ : state) {
    const StateVector psi = pqc.prepare(params);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}

void bm_cr_unitary(benchmark::State& state) {
  const CRCoefficients c = average_cr_coefficients();
  double t = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cr_unitary(c, t));
    t = t < 1200.0 ? t + 1.0 : 10.0;
  }
}

void bm_tomography_fit(benchmark::State& state) {
  const CRCoefficients c = average_cr_coefficients();
  std::vector<double> grid(64);
  for (int i = 0; i < 64; ++i) grid[i] = 1200.0 * i / 63.0;
  const auto series = simulate_ht(c, grid, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(fit_cr_coefficients(series));
}

void bm_expressibility(benchmark::State& state) {
  const Pqc pqc(build_pqc(4, 3, RotationSet::Ry, Entangler::cnot()));
  for (auto _ : state)
    benchmark::DoNotOptimize(expressibility(pqc, 1000, 75, 0, 1).expr_nats);
}

void bm_gradient_sample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Pqc pqc(build_pqc(n, 10 * n, RotationSet::Ry, Entangler::cnot()));
  const auto params = random_params(pqc.parameter_count(), 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(partial_derivative(pqc, params, 0, CostKind::global()));
}

void bm_vqe_maxcut(benchmark::State& state) {
  MaxCutProblem triangle;
  triangle.n_nodes = 3;
  triangle.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  const PauliSum h = maxcut_hamiltonian(triangle);
  const Pqc pqc(build_pqc(3, 5, RotationSet::Ry, Entangler::cnot()));
  SPSAConfig config;
  config.max_iterations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const VQEResult result = vqe_run(pqc, h, config);
    benchmark::DoNotOptimize(result.trace.best_value);
  }
}

BENCHMARK(bm_pqc_prepare)->Args({4, 4})->Args({8, 5})->Args({9, 8})->Args({12, 5});
BENCHMARK(bm_cr_unitary);
BENCHMARK(bm_tomography_fit);
BENCHMARK(bm_expressibility)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gradient_sample)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(bm_vqe_maxcut)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
