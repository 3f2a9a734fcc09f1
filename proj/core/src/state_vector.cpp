#include "crsim/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace crsim {

namespace {

constexpr int kMaxQubits = 26;  // 1 GiB of amplitudes; plenty for this toolkit

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " + std::to_string(n));
}

// Inserts a zero bit at position p, shifting higher bits up.
inline std::int64_t insert_zero_bit(std::int64_t x, int p) {
  const std::int64_t low = x & ((std::int64_t{1} << p) - 1);
  return ((x >> p) << (p + 1)) | low;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  amps_ = Eigen::VectorXcd::Zero(std::int64_t{1} << n_qubits);
  amps_(0) = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
  if (amplitudes.size() != (std::int64_t{1} << n_qubits))
    throw std::invalid_argument("StateVector: amplitude count does not match qubit count");
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > 1e-8)
    throw std::invalid_argument("StateVector: amplitudes are not normalized (norm " +
                                std::to_string(n) + ")");
  amps_ = std::move(amplitudes);
}

StateVector StateVector::normalized(int n_qubits, Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (n < 1e-300) throw std::invalid_argument("StateVector::normalized: zero vector");
  amplitudes /= n;
  return StateVector(n_qubits, std::move(amplitudes));
}

StateVector StateVector::computational_basis(int n_qubits, std::int64_t index) {
  check_qubit_count(n_qubits);
  if (index < 0 || index >= (std::int64_t{1} << n_qubits))
    throw std::invalid_argument("computational_basis: index out of range");
  StateVector s(n_qubits);
  s.amps_(0) = 0.0;
  s.amps_(index) = 1.0;
  return s;
}

std::complex<double> StateVector::amplitude(std::int64_t index) const {
  if (index < 0 || index >= dim())
    throw std::invalid_argument("amplitude: index out of range");
  return amps_(index);
}

double StateVector::probability(std::int64_t index) const {
  const auto a = amplitude(index);
  return std::norm(a);
}

void StateVector::apply_single_qubit(const Eigen::Matrix2cd& u, int target) {
  if (target < 0 || target >= n_qubits_)
    throw std::invalid_argument("apply_single_qubit: target out of range");
  const std::int64_t stride = std::int64_t{1} << (n_qubits_ - 1 - target);
  const std::complex<double> u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  const std::int64_t d = dim();
  for (std::int64_t base = 0; base < d; base += 2 * stride) {
    for (std::int64_t i = base; i < base + stride; ++i) {
      const std::complex<double> a0 = amps_(i);
      const std::complex<double> a1 = amps_(i + stride);
      amps_(i) = u00 * a0 + u01 * a1;
      amps_(i + stride) = u10 * a0 + u11 * a1;
    }
  }
}

void StateVector::apply_two_qubit(const Eigen::Matrix4cd& u, int q0, int q1) {
  if (q0 < 0 || q0 >= n_qubits_ || q1 < 0 || q1 >= n_qubits_)
    throw std::invalid_argument("apply_two_qubit: target out of range");
  if (q0 == q1) throw std::invalid_argument("apply_two_qubit: targets must be distinct");
  const int p0 = n_qubits_ - 1 - q0;
  const int p1 = n_qubits_ - 1 - q1;
  const std::int64_t s0 = std::int64_t{1} << p0;
  const std::int64_t s1 = std::int64_t{1} << p1;
  const int lo = std::min(p0, p1);
  const int hi = std::max(p0, p1);
  const std::int64_t quarter = dim() >> 2;
  for (std::int64_t r = 0; r < quarter; ++r) {
    const std::int64_t i00 = insert_zero_bit(insert_zero_bit(r, lo), hi);
    const std::int64_t i01 = i00 | s1;
    const std::int64_t i10 = i00 | s0;
    const std::int64_t i11 = i00 | s0 | s1;
    const Eigen::Vector4cd v{amps_(i00), amps_(i01), amps_(i10), amps_(i11)};
    const Eigen::Vector4cd w = u * v;
    amps_(i00) = w(0);
    amps_(i01) = w(1);
    amps_(i10) = w(2);
    amps_(i11) = w(3);
  }
}

void StateVector::apply_rotation(Pauli axis, double angle, int target) {
  apply_single_qubit(rotation_gate(axis, angle), target);
}

void StateVector::apply_unitary(const Matrix& u, std::span<const int> targets) {
  const int k = static_cast<int>(targets.size());
  if (k < 1 || k > n_qubits_)
    throw std::invalid_argument("apply_unitary: need between 1 and n_qubits targets");
  const std::int64_t gd = std::int64_t{1} << k;
  if (u.rows() != gd || u.cols() != gd)
    throw std::invalid_argument("apply_unitary: matrix dimension does not match target count");
  for (int i = 0; i < k; ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits_)
      throw std::invalid_argument("apply_unitary: target out of range");
    for (int j = i + 1; j < k; ++j)
      if (targets[i] == targets[j])
        throw std::invalid_argument("apply_unitary: duplicate target qubit");
  }

  if (k == 1) {
    apply_single_qubit(u, targets[0]);
    return;
  }
  if (k == 2) {
    apply_two_qubit(u, targets[0], targets[1]);
    return;
  }

  // Generic strided kernel: enumerate the non-target configurations, gather
  // the 2^k amplitudes addressed by the targets, multiply, scatter back.
  std::vector<int> positions(k);
  for (int i = 0; i < k; ++i) positions[i] = n_qubits_ - 1 - targets[i];
  std::vector<int> sorted_positions = positions;
  std::sort(sorted_positions.begin(), sorted_positions.end());

  std::vector<std::int64_t> offsets(gd, 0);
  for (std::int64_t g = 0; g < gd; ++g)
    for (int j = 0; j < k; ++j)
      if ((g >> (k - 1 - j)) & 1) offsets[g] |= std::int64_t{1} << positions[j];

  const std::int64_t rest = dim() >> k;
  Eigen::VectorXcd v(gd), w(gd);
  for (std::int64_t r = 0; r < rest; ++r) {
    std::int64_t base = r;
    for (int p : sorted_positions) base = insert_zero_bit(base, p);
    for (std::int64_t g = 0; g < gd; ++g) v(g) = amps_(base | offsets[g]);
    w.noalias() = u * v;
    for (std::int64_t g = 0; g < gd; ++g) amps_(base | offsets[g]) = w(g);
  }
}

std::complex<double> StateVector::inner_product(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_)
    throw std::invalid_argument("inner_product: qubit counts differ");
  return amps_.dot(other.amps_);
}

double StateVector::fidelity(const StateVector& other) const {
  const double f = std::norm(inner_product(other));
  return std::clamp(f, 0.0, 1.0);
}

std::string bitstring_of_index(std::int64_t index, int n_qubits) {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q)
    if ((index >> (n_qubits - 1 - q)) & 1) s[q] = '1';
  return s;
}

std::int64_t index_of_bitstring(std::string_view bits) {
  std::int64_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("index_of_bitstring: bitstrings are over {0,1}");
    idx = (idx << 1) | (c == '1' ? 1 : 0);
  }
  return idx;
}

}  // namespace crsim
