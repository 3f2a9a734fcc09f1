#pragma once

#include <Eigen/Dense>
#include <complex>

namespace crsim {

using Matrix = Eigen::MatrixXcd;

enum class Pauli { I, X, Y, Z };

// Single-qubit Pauli matrix for the given axis.
Eigen::Matrix2cd pauli_matrix(Pauli p);

Eigen::Matrix2cd hadamard_gate();

// exp(-i * angle * P / 2) for P in {X, Y, Z}; throws for Pauli::I.
Eigen::Matrix2cd rotation_gate(Pauli axis, double angle);

// Kronecker product; the first factor owns the most significant index bits,
// matching the qubit-0-is-MSB amplitude convention used throughout.
Matrix kron(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& m, double tol = 1e-9);
bool is_hermitian(const Matrix& m, double tol = 1e-10);

}  // namespace crsim
