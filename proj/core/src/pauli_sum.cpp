#include "crsim/pauli_sum.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace crsim {

namespace {

constexpr int kDenseQubitLimit = 12;

bool valid_pauli_string(std::string_view s) {
  for (char c : s)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') return false;
  return !s.empty();
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

PauliSum::PauliSum(std::vector<PauliTerm> terms) {
  if (terms.empty()) return;
  n_qubits_ = static_cast<int>(terms.front().paulis.size());
  std::unordered_map<std::string, std::size_t> seen;
  for (auto& t : terms) {
    if (!valid_pauli_string(t.paulis))
      throw std::invalid_argument("PauliSum: Pauli strings are nonempty words over I/X/Y/Z");
    if (static_cast<int>(t.paulis.size()) != n_qubits_)
      throw std::invalid_argument("PauliSum: all Pauli strings must share one length");
    if (!std::isfinite(t.coefficient))
      throw std::invalid_argument("PauliSum: coefficients must be finite");
    auto [it, inserted] = seen.emplace(t.paulis, terms_.size());
    if (inserted)
      terms_.push_back(std::move(t));
    else
      terms_[it->second].coefficient += t.coefficient;  // merge duplicates
  }
}

PauliSum PauliSum::parse(std::string_view text, const std::string& source) {
  std::vector<PauliTerm> terms;
  int line_no = 0;
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string coeff_token, pauli_token, extra;
    if (!(fields >> coeff_token)) continue;  // blank or comment-only line
    if (!(fields >> pauli_token))
      throw ParseError(source, line_no, "expected '<coefficient> <pauli string>'");
    if (fields >> extra)
      throw ParseError(source, line_no, "unexpected trailing field '" + extra + "'");

    double coeff = 0.0;
    const char* begin = coeff_token.data();
    const char* end = begin + coeff_token.size();
    auto [ptr, ec] = std::from_chars(begin, end, coeff);
    if (ec != std::errc{} || ptr != end)
      throw ParseError(source, line_no, "invalid coefficient '" + coeff_token + "'");
    if (!valid_pauli_string(pauli_token))
      throw ParseError(source, line_no, "invalid Pauli string '" + pauli_token + "'");
    if (!terms.empty() && pauli_token.size() != terms.front().paulis.size())
      throw ParseError(source, line_no, "Pauli string length differs from earlier lines");
    terms.push_back({coeff, std::move(pauli_token)});
  }
  if (terms.empty()) throw ParseError(source, std::max(line_no, 1), "no terms found");
  return PauliSum(std::move(terms));
}

PauliSum PauliSum::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.filename().string());
}

std::string PauliSum::to_text() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : terms_) out << t.coefficient << " " << t.paulis << "\n";
  return out.str();
}

double PauliSum::coefficient_l1() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::abs(t.coefficient);
  return sum;
}

Matrix PauliSum::to_dense() const {
  if (n_qubits_ == 0) throw std::invalid_argument("to_dense: empty PauliSum");
  if (n_qubits_ > kDenseQubitLimit)
    throw std::invalid_argument("to_dense: dense form is limited to " +
                                std::to_string(kDenseQubitLimit) + " qubits");
  const std::int64_t d = std::int64_t{1} << n_qubits_;
  Matrix h = Matrix::Zero(d, d);
  for (const auto& t : terms_) {
    Matrix p = Matrix::Identity(1, 1);
    for (char c : t.paulis) {
      Pauli axis = c == 'I' ? Pauli::I : c == 'X' ? Pauli::X : c == 'Y' ? Pauli::Y : Pauli::Z;
      p = kron(p, pauli_matrix(axis));
    }
    h += t.coefficient * p;
  }
  return h;
}

double expectation(const StateVector& state, std::string_view pauli_string) {
  const int n = state.n_qubits();
  if (static_cast<int>(pauli_string.size()) != n)
    throw std::invalid_argument("expectation: Pauli string length differs from qubit count");

  std::uint64_t flip_mask = 0, phase_mask = 0;
  int y_count = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    switch (pauli_string[q]) {
      case 'I': break;
      case 'X': flip_mask |= bit; break;
      case 'Y': flip_mask |= bit; phase_mask |= bit; ++y_count; break;
      case 'Z': phase_mask |= bit; break;
      default:
        throw std::invalid_argument("expectation: Pauli strings are words over I/X/Y/Z");
    }
  }

  // P|b> = i^y * (-1)^popcount(b & phase) * |b ^ flip>.
  static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> global = i_pow[y_count % 4];
  const auto& amps = state.amplitudes();
  std::complex<double> sum = 0.0;
  const std::int64_t d = state.dim();
  for (std::int64_t b = 0; b < d; ++b) {
    const double sign =
        (std::popcount(static_cast<std::uint64_t>(b) & phase_mask) & 1) ? -1.0 : 1.0;
    sum += std::conj(amps(b ^ static_cast<std::int64_t>(flip_mask))) * (sign * amps(b));
  }
  return (global * sum).real();
}

double expectation(const StateVector& state, const PauliSum& observable) {
  if (observable.n_qubits() != state.n_qubits())
    throw std::invalid_argument("expectation: observable and state qubit counts differ");
  double value = 0.0;
  for (const auto& t : observable.terms())
    value += t.coefficient * expectation(state, t.paulis);
  return value;
}

std::pair<double, StateVector> exact_minimum_eigenvalue(const PauliSum& h) {
  const Matrix dense = h.to_dense();  // enforces the 12-qubit guard
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dense);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("exact_minimum_eigenvalue: eigensolver failed");
  Eigen::VectorXcd ground = solver.eigenvectors().col(0);
  return {solver.eigenvalues()(0), StateVector::normalized(h.n_qubits(), std::move(ground))};
}

}  // namespace crsim
