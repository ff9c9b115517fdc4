#include "gqm/random.hpp"

#include <cmath>

namespace gqm {

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return normal_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

ComplexVector Rng::gaussian_vector(std::size_t dim) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_normal();
  return ComplexVector(std::move(v));
}

Ray Rng::ray(std::size_t dim) { return project(gaussian_vector(dim)); }

HermitianOperator Rng::hermitian(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd x(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = complex_normal();
  return HermitianOperator(0.5 * (x + x.adjoint()));
}

}  // namespace gqm
