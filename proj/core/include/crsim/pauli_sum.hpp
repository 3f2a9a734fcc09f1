#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crsim/state_vector.hpp"

namespace crsim {

// Parse failure in a text input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct PauliTerm {
  double coefficient;
  std::string paulis;  // one of I/X/Y/Z per qubit, qubit 0 first
};

// Real-weighted sum of Pauli strings over a fixed qubit count.
// Construction merges duplicate strings by adding their coefficients.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::vector<PauliTerm> terms);

  // Text format, shared by every Hamiltonian file in the toolkit: one
  // "<coefficient> <pauli string>" pair per line, '#' starts a comment.
  static PauliSum parse(std::string_view text, const std::string& source = "<string>");
  static PauliSum load(const std::filesystem::path& path);
  std::string to_text() const;

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  double coefficient_l1() const;

  // Dense 2^n x 2^n matrix; refuses n > 12 (test oracles only).
  Matrix to_dense() const;

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

// <state|P|state> for a single Pauli string; the result of a Hermitian
// quadratic form, so the imaginary residue (|.| < 1e-10) is discarded.
double expectation(const StateVector& state, std::string_view pauli_string);

// <state|H|state>; bounded by coefficient_l1() in magnitude.
double expectation(const StateVector& state, const PauliSum& observable);

// Exact ground state via dense diagonalization; refuses n > 12.
std::pair<double, StateVector> exact_minimum_eigenvalue(const PauliSum& h);

}  // namespace crsim
