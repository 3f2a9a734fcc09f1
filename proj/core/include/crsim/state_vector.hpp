#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>

#include "crsim/gates.hpp"

namespace crsim {

// Dense statevector over n qubits.
//
// Basis convention (fixed project-wide): qubit 0 is the MOST significant bit
// of the amplitude index, so |q0 q1 ... q_{n-1}> lives at index
// q0*2^(n-1) + q1*2^(n-2) + ... + q_{n-1}.  Gates are applied with strided
// in-place kernels; no full 2^n x 2^n operator is ever materialized here.
class StateVector {
 public:
  // |0...0> on n qubits.
  explicit StateVector(int n_qubits);

  // Takes ownership of explicit amplitudes; requires unit norm within 1e-8.
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  // Normalizes the given amplitudes (error on the zero vector).
  static StateVector normalized(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector computational_basis(int n_qubits, std::int64_t index);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  std::complex<double> amplitude(std::int64_t index) const;
  double probability(std::int64_t index) const;
  double norm() const { return amps_.norm(); }

  // In-place application of a 2^k x 2^k unitary to the listed target qubits.
  // targets[0] addresses the most significant bit of the gate's own index,
  // i.e. apply_unitary(kron(A, B), {p, q}) applies A to qubit p and B to q.
  void apply_unitary(const Matrix& u, std::span<const int> targets);

  void apply_single_qubit(const Eigen::Matrix2cd& u, int target);
  void apply_two_qubit(const Eigen::Matrix4cd& u, int q0, int q1);
  void apply_rotation(Pauli axis, double angle, int target);

  // <this|other>.
  std::complex<double> inner_product(const StateVector& other) const;

  // |<this|other>|^2, clamped to [0, 1].
  double fidelity(const StateVector& other) const;

 private:
  int n_qubits_;
  Eigen::VectorXcd amps_;
};

// "0101"-style label of a basis index, qubit 0 first.
std::string bitstring_of_index(std::int64_t index, int n_qubits);
std::int64_t index_of_bitstring(std::string_view bits);

}  // namespace crsim
