#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "crsim/state_vector.hpp"

namespace crsim {

// Draws `shots` bitstrings (qubit 0 first) after rotating each qubit into the
// measurement basis named by `pauli_basis` ('I' and 'Z' measure as-is, 'X'
// and 'Y' rotate their eigenbasis onto the computational one).  Deterministic
// for a given seed; throws if shots < 1.
std::map<std::string, int> sample_counts(const StateVector& state,
                                         std::string_view pauli_basis,
                                         int shots, std::uint64_t seed);

}  // namespace crsim
