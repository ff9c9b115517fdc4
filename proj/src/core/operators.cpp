#include "gqm/operators.hpp"

#include <cmath>

namespace gqm::ops {

namespace {
constexpr Complex I{0.0, 1.0};
}

HermitianOperator identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(Eigen::MatrixXcd::Identity(n, n));
}

HermitianOperator pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return HermitianOperator(m);
}

HermitianOperator pauli_y() {
  Eigen::Matrix2cd m;
  m << 0.0, -I, I, 0.0;
  return HermitianOperator(m);
}

HermitianOperator pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return HermitianOperator(m);
}

Eigen::MatrixXcd lowering(std::size_t dim) {
  if (dim < 2) throw InvalidInput("oscillator truncation needs at least two levels");
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

HermitianOperator position(std::size_t dim) {
  const Eigen::MatrixXcd a = lowering(dim);
  return HermitianOperator((a + a.adjoint()) / std::sqrt(2.0));
}

HermitianOperator momentum(std::size_t dim) {
  const Eigen::MatrixXcd a = lowering(dim);
  return HermitianOperator(I * (a.adjoint() - a) / std::sqrt(2.0));
}

}  // namespace gqm::ops
