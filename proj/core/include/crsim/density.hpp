#pragma once

#include <span>

#include "crsim/state_vector.hpp"

namespace crsim {

// Reduced density matrix over the kept qubits (ascending order; keep[0]
// addresses the most significant bit of the row index).  keep must be a
// nonempty proper subset of the state's qubits.
Matrix partial_trace(const StateVector& state, std::span<const int> keep);

// S(rho) = -Tr[rho log2 rho] in bits.  Eigenvalues are clamped at zero to
// absorb numerical residue; throws on non-Hermitian input.
double von_neumann_entropy(const Matrix& rho);

}  // namespace crsim
