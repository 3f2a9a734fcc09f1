#include "crsim/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "crsim/rng.hpp"

namespace crsim {

std::map<std::string, int> sample_counts(const StateVector& state,
                                         std::string_view pauli_basis,
                                         int shots, std::uint64_t seed) {
  const int n = state.n_qubits();
  if (static_cast<int>(pauli_basis.size()) != n)
    throw std::invalid_argument("sample_counts: basis string length differs from qubit count");
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");

  // Rotate each qubit's measurement eigenbasis onto the computational basis:
  // H X H = Z and (H S^dag) Y (H S^dag)^dag = Z.
  StateVector rotated = state;
  const std::complex<double> i{0.0, 1.0};
  Eigen::Matrix2cd h_sdag;
  const double s = 1.0 / std::sqrt(2.0);
  h_sdag << s, -i * s, s, i * s;
  for (int q = 0; q < n; ++q) {
    switch (pauli_basis[q]) {
      case 'I':
      case 'Z': break;
      case 'X': rotated.apply_single_qubit(hadamard_gate(), q); break;
      case 'Y': rotated.apply_single_qubit(h_sdag, q); break;
      default:
        throw std::invalid_argument("sample_counts: basis strings are words over I/X/Y/Z");
    }
  }

  const std::int64_t d = rotated.dim();
  std::vector<double> cdf(d);
  double acc = 0.0;
  for (std::int64_t b = 0; b < d; ++b) {
    acc += rotated.probability(b);
    cdf[b] = acc;
  }
  const double total = cdf.back();  // 1 up to rounding; absorb the residue

  RandomStream rng(seed);
  std::map<std::string, int> counts;
  for (int shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::int64_t idx = std::min<std::int64_t>(it - cdf.begin(), d - 1);
    ++counts[bitstring_of_index(idx, n)];
  }
  return counts;
}

}  // namespace crsim
