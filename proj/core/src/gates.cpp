#include "crsim/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace crsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Eigen::Matrix2cd hadamard_gate() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Eigen::Matrix2cd rotation_gate(Pauli axis, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  Eigen::Matrix2cd m;
  switch (axis) {
    case Pauli::X: m << c, -kI * s, -kI * s, c; break;
    case Pauli::Y: m << c, -s, s, c; break;
    case Pauli::Z: m << std::exp(-kI * (angle / 2.0)), 0, 0, std::exp(kI * (angle / 2.0)); break;
    case Pauli::I: throw std::invalid_argument("rotation_gate: axis must be X, Y or Z");
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix d = m.adjoint() * m;
  d -= Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace crsim
