#include "gqm/linalg.hpp"

#include <cmath>
#include <sstream>

namespace gqm {

namespace {

std::string mismatch_message(std::size_t expected, std::size_t actual) {
  std::ostringstream os;
  os << "dimension mismatch: expected " << expected << ", got " << actual;
  return os.str();
}

std::string dependence_message(std::size_t index, double pivot) {
  std::ostringstream os;
  os << "vector " << index << " is numerically dependent on its predecessors (relative pivot "
     << pivot << ")";
  return os.str();
}

double normalized_norm_sq(const HermitianOperator& F, const ComplexVector& psi) {
  require_same_dim(F.dim(), psi.dim());
  const double n2 = psi.amplitudes().squaredNorm();
  if (n2 == 0.0) throw InvalidInput("expectation of the zero vector is undefined");
  return n2;
}

}  // namespace

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
    : InvalidInput(mismatch_message(expected, actual)) {}

DependentVectors::DependentVectors(std::size_t index, double pivot_norm)
    : InvalidInput(dependence_message(index, pivot_norm)), index_(index), pivot_(pivot_norm) {}

void require_same_dim(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

ComplexVector::ComplexVector(Eigen::VectorXcd amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw InvalidInput("vector dimension must be positive");
  if (!v_.allFinite()) throw InvalidInput("vector has non-finite entries");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> amplitudes)
    : ComplexVector(Eigen::Map<const Eigen::VectorXcd>(amplitudes.begin(),
                                                       static_cast<Eigen::Index>(amplitudes.size()))) {}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw InvalidInput("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return ComplexVector(std::move(v));
}

ComplexVector ComplexVector::scaled(Complex alpha) const { return ComplexVector(v_ * alpha); }

ComplexVector ComplexVector::normalized() const {
  const double n = v_.norm();
  if (n == 0.0) throw InvalidInput("cannot normalize the zero vector");
  return ComplexVector(v_ / n);
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  require_same_dim(a.dim(), b.dim());
  return a.amplitudes().dot(b.amplitudes());
}

HermitianOperator::HermitianOperator(const Eigen::MatrixXcd& entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols())
    throw InvalidInput("operator must be a non-empty square matrix");
  if (!entries.allFinite()) throw InvalidInput("operator has non-finite entries");
  const Eigen::MatrixXcd adj = entries.adjoint();
  const double drift = (entries - adj).cwiseAbs().maxCoeff();
  if (drift >= tol::hermiticity) {
    std::ostringstream os;
    os << "operator is not Hermitian (max |A - A^H| = " << drift << ")";
    throw InvalidInput(os.str());
  }
  m_ = 0.5 * (entries + adj);
}

ComplexVector HermitianOperator::apply(const ComplexVector& v) const {
  require_same_dim(dim(), v.dim());
  return ComplexVector(m_ * v.amplitudes());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim());
  return HermitianOperator(m_ + other.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim());
  return HermitianOperator(m_ - other.m_);
}

HermitianOperator HermitianOperator::scaled(double s) const { return HermitianOperator(m_ * s); }

HermitianOperator HermitianOperator::shifted(double alpha) const {
  Eigen::MatrixXcd m = m_;
  m.diagonal().array() += alpha;
  return HermitianOperator(m);
}

HermitianOperator::Spectrum HermitianOperator::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Projector::Projector(HermitianOperator op, std::size_t rank) : op_(std::move(op)), rank_(rank) {
  const Eigen::MatrixXcd& p = op_.entries();
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10) throw InvalidInput("operator is not idempotent");
  if (std::abs(p.trace().real() - static_cast<double>(rank_)) > 1e-10)
    throw InvalidInput("projector trace does not match its rank");
}

InnerProductSplit inner_product_split(const ComplexVector& psi, const ComplexVector& phi) {
  const Complex z = inner(psi, phi);
  return {z.real(), -z.imag()};
}

double expectation(const HermitianOperator& F, const ComplexVector& psi) {
  const double n2 = normalized_norm_sq(F, psi);
  const Complex num = psi.amplitudes().dot(F.entries() * psi.amplitudes());
  return num.real() / n2;
}

double commutator_expectation(const HermitianOperator& F, const HermitianOperator& G,
                              const ComplexVector& psi) {
  require_same_dim(F.dim(), G.dim());
  const double n2 = normalized_norm_sq(F, psi);
  // <-i[F,G]> = -i(<F psi|G psi> - <G psi|F psi>) = 2 Im <F psi|G psi>
  const Eigen::VectorXcd fpsi = F.entries() * psi.amplitudes();
  const Eigen::VectorXcd gpsi = G.entries() * psi.amplitudes();
  return 2.0 * fpsi.dot(gpsi).imag() / n2;
}

double symmetrized_covariance(const HermitianOperator& F, const HermitianOperator& M,
                              const ComplexVector& psi) {
  require_same_dim(F.dim(), M.dim());
  const double n2 = normalized_norm_sq(F, psi);
  const Eigen::VectorXcd u = psi.amplitudes() / std::sqrt(n2);
  const double f = u.dot(F.entries() * u).real();
  const double m = u.dot(M.entries() * u).real();
  const Eigen::VectorXcd fc = F.entries() * u - f * u;
  const Eigen::VectorXcd mc = M.entries() * u - m * u;
  return fc.dot(mc).real();
}

double variance(const HermitianOperator& F, const ComplexVector& psi) {
  return symmetrized_covariance(F, F, psi);
}

Eigen::MatrixXcd propagator(const HermitianOperator& H, double t) {
  const auto spec = H.spectrum();
  Eigen::VectorXcd phases(spec.values.size());
  for (Eigen::Index k = 0; k < spec.values.size(); ++k)
    phases(k) = std::polar(1.0, -spec.values(k) * t);
  return spec.vectors * phases.asDiagonal() * spec.vectors.adjoint();
}

ComplexVector evolve_exact(const HermitianOperator& H, const ComplexVector& psi, double t) {
  require_same_dim(H.dim(), psi.dim());
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw InvalidInput("evolve_exact expects a unit vector");
  if (t == 0.0) return psi;
  return ComplexVector(propagator(H, t) * psi.amplitudes());
}

Projector make_projector(const std::vector<ComplexVector>& vectors) {
  if (vectors.empty()) throw InvalidInput("projector needs at least one vector");
  const std::size_t n = vectors.front().dim();
  std::vector<double> norms;
  norms.reserve(vectors.size());
  for (const auto& v : vectors) {
    require_same_dim(n, v.dim());
    const double nv = v.norm();
    if (nv == 0.0) throw InvalidInput("projector input contains a zero vector");
    norms.push_back(nv);
  }
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double overlap = std::abs(inner(vectors[i], vectors[j])) / (norms[i] * norms[j]);
      if (overlap >= tol::orthogonality) {
        std::ostringstream os;
        os << "projector inputs " << i << " and " << j << " are not orthogonal (overlap " << overlap
           << "); orthogonalize with gram_schmidt first";
        throw InvalidInput(os.str());
      }
    }
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Eigen::VectorXcd& v = vectors[i].amplitudes();
    p += v * v.adjoint() / (norms[i] * norms[i]);
  }
  return Projector(HermitianOperator(p), vectors.size());
}

std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& vectors) {
  std::vector<ComplexVector> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!out.empty()) require_same_dim(out.front().dim(), vectors[i].dim());
    const double original = vectors[i].norm();
    Eigen::VectorXcd w = vectors[i].amplitudes();
    for (const auto& q : out) w -= q.amplitudes().dot(w) * q.amplitudes();
    const double pivot = original > 0.0 ? w.norm() / original : 0.0;
    if (pivot < tol::dependence) throw DependentVectors(i, pivot);
    out.emplace_back(w / w.norm());
  }
  return out;
}

}  // namespace gqm
