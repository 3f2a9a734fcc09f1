#include <benchmark/benchmark.h>

#include "crsim/cr_model.hpp"
#include "crsim/density.hpp"
#include "crsim/pauli_sum.hpp"
#include "crsim/rng.hpp"
#include "crsim/state_vector.hpp"

namespace {

using namespace crsim;

StateVector random_state(int n_qubits, std::uint64_t seed) {
  RandomStream rng(seed);
  Eigen::VectorXcd amps(std::int64_t{1} << n_qubits);
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    amps(i) = std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  amps.normalize();
  return StateVector(n_qubits, std::move(amps));
}

void bm_single_qubit_rotation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector psi = random_state(n, 1);
  int q = 0;
  for (auto _ : state) {
    psi.apply_rotation(Pauli::Y, 0.3, q);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

void bm_two_qubit_gate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector psi = random_state(n, 2);
  const Eigen::Matrix4cd u = cnot_unitary();
  int q = 0;
  for (auto _ : state) {
    psi.apply_two_qubit(u, q, (q + 1) % n);
    q = (q + 1) % n;
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

void bm_pauli_expectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StateVector psi = random_state(n, 3);
  std::string paulis(n, 'I');
  paulis[0] = 'Z';
  paulis[n - 1] = 'X';
  paulis[n / 2] = 'Y';
  for (auto _ : state) benchmark::DoNotOptimize(expectation(psi, paulis));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

void bm_partial_trace_half(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StateVector psi = random_state(n, 4);
  std::vector<int> keep(n / 2);
  for (int q = 0; q < n / 2; ++q) keep[q] = q;
  for (auto _ : state) {
    const Eigen::MatrixXcd rho = partial_trace(psi, keep);
    benchmark::DoNotOptimize(rho.data());
  }
}

void bm_entropy_half(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StateVector psi = random_state(n, 5);
  std::vector<int> keep(n / 2);
  for (int q = 0; q < n / 2; ++q) keep[q] = q;
  const Eigen::MatrixXcd rho = partial_trace(psi, keep);
  for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(rho));
}

BENCHMARK(bm_single_qubit_rotation)->Arg(8)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(bm_two_qubit_gate)->Arg(8)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(bm_pauli_expectation)->Arg(8)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(bm_partial_trace_half)->Arg(8)->Arg(12)->Arg(16);
BENCHMARK(bm_entropy_half)->Arg(8)->Arg(12)->Arg(16);

}  // namespace
