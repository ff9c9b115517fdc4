// Dense complex linear algebra on C^n: vectors, Hermitian operators,
// projectors and the elementary expectation values everything else is
// checked against.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gqm {

using Complex = std::complex<double>;

/// Thrown when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when two arguments live in spaces of different dimension.
class DimensionMismatch : public InvalidInput {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual);
};

/// Thrown when a numerical procedure fails to meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by gram_schmidt; index() names the first dependent input vector.
class DependentVectors : public InvalidInput {
 public:
  DependentVectors(std::size_t index, double pivot_norm);
  std::size_t index() const noexcept { return index_; }
  double pivot_norm() const noexcept { return pivot_; }

 private:
  std::size_t index_;
  double pivot_;
};

class ComplexVector {
 public:
  explicit ComplexVector(Eigen::VectorXcd amplitudes);
  ComplexVector(std::initializer_list<Complex> amplitudes);

  static ComplexVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return v_; }
  Complex operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }
  double norm() const { return v_.norm(); }

  ComplexVector scaled(Complex alpha) const;
  ComplexVector normalized() const;

 private:
  Eigen::VectorXcd v_;
};

/// <a|b>, antilinear in the first slot.
Complex inner(const ComplexVector& a, const ComplexVector& b);

class HermitianOperator {
 public:
  /// Symmetrizes (A + A^H)/2 when max|A - A^H| < 1e-12; throws otherwise.
  explicit HermitianOperator(const Eigen::MatrixXcd& entries);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return m_; }

  ComplexVector apply(const ComplexVector& v) const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator scaled(double s) const;
  HermitianOperator shifted(double alpha) const;  // F + alpha * I

  /// Eigenpairs with eigenvalues ascending (Eigen's convention).
  struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
  };
  Spectrum spectrum() const;

 private:
  Eigen::MatrixXcd m_;
};

class Projector {
 public:
  Projector(HermitianOperator op, std::size_t rank);
  const HermitianOperator& op() const noexcept { return op_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t dim() const noexcept { return op_.dim(); }

 private:
  HermitianOperator op_;
  std::size_t rank_;
};

struct InnerProductSplit {
  double g_part;
  double omega_part;
};

/// <psi|phi> = g - i*omega.
InnerProductSplit inner_product_split(const ComplexVector& psi, const ComplexVector& phi);

double expectation(const HermitianOperator& F, const ComplexVector& psi);

/// <-i[F,G]> at psi.
double commutator_expectation(const HermitianOperator& F, const HermitianOperator& G,
                              const ComplexVector& psi);

/// (1/2)<FM + MF> - <F><M> on the normalized state.
double symmetrized_covariance(const HermitianOperator& F, const HermitianOperator& M,
                              const ComplexVector& psi);

double variance(const HermitianOperator& F, const ComplexVector& psi);

/// exp(-i H t) as a dense unitary, built from the eigendecomposition of H.
Eigen::MatrixXcd propagator(const HermitianOperator& H, double t);

/// exp(-i H t) psi. psi must be unit norm.
ComplexVector evolve_exact(const HermitianOperator& H, const ComplexVector& psi, double t);

/// Sum of |v><v| / <v|v> over a pairwise-orthogonal set (tolerance 1e-10).
Projector make_projector(const std::vector<ComplexVector>& vectors);

/// Modified Gram-Schmidt. Throws DependentVectors when a pivot falls below
/// 1e-10 relative to the norm of the vector being processed.
std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& vectors);

namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double orthogonality = 1e-10;
inline constexpr double dependence = 1e-10;
inline constexpr double unit_norm = 1e-12;
}  // namespace tol

void require_same_dim(std::size_t expected, std::size_t actual);

}  // namespace gqm
