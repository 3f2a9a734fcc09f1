#include "crsim/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace crsim {

Matrix partial_trace(const StateVector& state, std::span<const int> keep) {
  const int n = state.n_qubits();
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (kept.empty() || static_cast<int>(kept.size()) >= n)
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= n)
      throw std::invalid_argument("partial_trace: kept qubit out of range");
    if (i > 0 && kept[i] == kept[i - 1])
      throw std::invalid_argument("partial_trace: duplicate kept qubit");
  }

  const int k = static_cast<int>(kept.size());
  std::vector<bool> is_kept(n, false);
  for (int q : kept) is_kept[q] = true;
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!is_kept[q]) traced.push_back(q);

  // Bit positions (qubit 0 is the most significant index bit).
  std::vector<int> keep_pos(k), rest_pos(traced.size());
  for (int i = 0; i < k; ++i) keep_pos[i] = n - 1 - kept[i];
  for (std::size_t i = 0; i < traced.size(); ++i) rest_pos[i] = n - 1 - traced[i];

  const std::int64_t kd = std::int64_t{1} << k;
  const std::int64_t rd = std::int64_t{1} << traced.size();
  const auto& amps = state.amplitudes();

  Matrix rho = Matrix::Zero(kd, kd);
  Eigen::VectorXcd v(kd);
  for (std::int64_t r = 0; r < rd; ++r) {
    std::int64_t rest_bits = 0;
    for (std::size_t i = 0; i < rest_pos.size(); ++i)
      if ((r >> (rest_pos.size() - 1 - i)) & 1) rest_bits |= std::int64_t{1} << rest_pos[i];
    for (std::int64_t i = 0; i < kd; ++i) {
      std::int64_t idx = rest_bits;
      for (int j = 0; j < k; ++j)
        if ((i >> (k - 1 - j)) & 1) idx |= std::int64_t{1} << keep_pos[j];
      v(i) = amps(idx);
    }
    rho.noalias() += v * v.adjoint();
  }
  return rho;
}

double von_neumann_entropy(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("von_neumann_entropy: square input required");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("von_neumann_entropy: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("von_neumann_entropy: eigensolver failed");
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = std::max(solver.eigenvalues()(i), 0.0);
    if (lambda > 1e-15) entropy -= lambda * std::log2(lambda);
  }
  return std::max(entropy, 0.0);
}

}  // namespace crsim
