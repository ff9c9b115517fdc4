// Independent reference computations and random generators for the tests.
// Oracles work on raw Eigen objects with textbook formulas so they share no
// code path with the library routines they check.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace oracle {

using C = std::complex<double>;
const C I{0.0, 1.0};

struct Gen {
  explicit Gen(std::uint64_t seed) : engine(seed) {}
  std::mt19937_64 engine;
  std::normal_distribution<double> normal{0.0, 1.0};

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine);
  }
  C complex() { return {normal(engine), normal(engine)}; }
  Eigen::VectorXcd vector(std::size_t n) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = complex();
    return v;
  }
  Eigen::VectorXcd unit(std::size_t n) { return vector(n).normalized(); }
  Eigen::MatrixXcd hermitian(std::size_t n) {
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = complex();
    return 0.5 * (a + a.adjoint());
  }
};

inline double distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return std::acos(std::min(1.0, c));
}

inline double probability(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

inline double mean(const Eigen::MatrixXcd& F, const Eigen::VectorXcd& psi) {
  return (psi.adjoint() * F * psi)(0, 0).real() / psi.squaredNorm();
}

inline double commutator(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& G, const Eigen::VectorXcd& psi) {
  const Eigen::MatrixXcd c = -I * (F * G - G * F);
  return (psi.adjoint() * c * psi)(0, 0).real() / psi.squaredNorm();
}

inline double variance(const Eigen::MatrixXcd& F, const Eigen::VectorXcd& psi) {
  const double m = mean(F, psi);
  return mean(F * F, psi) - m * m;
}

inline double covariance(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& G, const Eigen::VectorXcd& psi) {
  return 0.5 * mean(F * G + G * F, psi) - mean(F, psi) * mean(G, psi);
}

/// exp(-i H t) by a scaled-and-squared Taylor series, independent of any
/// eigendecomposition.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& H, double t) {
  const Eigen::MatrixXcd A = -I * t * H;
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Eigen::MatrixXcd B = A / std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(A.rows(), A.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * B / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Homogeneous vector (1, t) in the chart z_0 = 1.
inline Eigen::VectorXcd lift(const Eigen::VectorXd& x) {
  const Eigen::Index m = x.size() / 2;
  Eigen::VectorXcd z(m + 1);
  z(0) = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) z(i + 1) = C(x(2 * i), x(2 * i + 1));
  return z;
}

/// Statistical metric at x in the chart z_0 = 1, as the Hessian of
/// d(x, x + y)^2 / 2 in y, by central differences of squared distances.
inline Eigen::MatrixXd metric_from_distances(const Eigen::VectorXd& x, double h = 1e-4) {
  const Eigen::Index n = x.size();
  const Eigen::VectorXcd z = lift(x);
  auto half_sq = [&](const Eigen::VectorXd& y) {
    const double d = distance(z, lift(x + y));
    return 0.5 * d * d;
  };
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
      Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
      ei(i) = h;
      ej(j) = h;
      g(i, j) = (half_sq(ei + ej) - half_sq(ei - ej) - half_sq(ej - ei) + half_sq(-ei - ej)) / (4.0 * h * h);
    }
  return g;
}

}  // namespace oracle
