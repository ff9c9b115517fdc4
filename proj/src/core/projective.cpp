#include "gqm/projective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace gqm {

namespace {

constexpr double kGaugeThreshold = 1e-12;
constexpr double kProbabilityRouteTolerance = 1e-12;
constexpr double kMembershipTolerance = 1e-10;

Eigen::VectorXcd gauge_fixed(Eigen::VectorXcd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > kGaugeThreshold) {
      v *= std::conj(v(i)) / m;
      v(i) = Complex(std::abs(v(i)), 0.0);
      return v;
    }
  }
  return v;
}

void require_orthogonal(const ComplexVector& a, const ComplexVector& b) {
  const double overlap = std::abs(inner(a, b)) / (a.norm() * b.norm());
  if (overlap >= tol::orthogonality) {
    std::ostringstream os;
    os << "basis rays are not orthogonal (overlap " << overlap
       << "); orthogonalize them with gram_schmidt first";
    throw InvalidInput(os.str());
  }
}

}  // namespace

Ray Ray::from(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidInput("the zero vector does not define a ray");
  return Ray(ComplexVector(gauge_fixed(psi.amplitudes() / n)));
}

Ray project(const ComplexVector& psi) { return Ray::from(psi); }

double fs_distance(const Ray& a, const Ray& b) {
  require_same_dim(a.dim(), b.dim());
  const Complex overlap = inner(a.rep(), b.rep());
  const double modulus = std::abs(overlap);
  // Chord between a and the phase-aligned b gives the angle without the
  // cancellation arccos suffers near zero distance.
  const Complex align = modulus > 0.0 ? std::conj(overlap) / modulus : Complex(1.0);
  const double chord = (a.rep().amplitudes() - align * b.rep().amplitudes()).norm();
  return std::min(2.0 * std::asin(std::min(1.0, 0.5 * chord)), 0.5 * std::numbers::pi);
}

double transition_probability(const Ray& a, const Ray& b) {
  require_same_dim(a.dim(), b.dim());
  const double p = std::min(1.0, std::norm(inner(a.rep(), b.rep())));
  const double c = std::cos(fs_distance(a, b));
  if (std::abs(p - c * c) > kProbabilityRouteTolerance) {
    std::ostringstream os;
    os << "transition probability routes disagree: |<a|b>|^2 = " << p << ", cos^2(d) = " << c * c;
    throw NumericalError(os.str());
  }
  return p;
}

RiemannCoordinate::RiemannCoordinate(Complex w0, Complex w1) {
  if (!std::isfinite(w0.real()) || !std::isfinite(w0.imag()) || !std::isfinite(w1.real()) ||
      !std::isfinite(w1.imag()))
    throw InvalidInput("Riemann coordinate must be finite");
  if (w0 == Complex(0.0) && w1 == Complex(0.0))
    throw InvalidInput("(0, 0) is not a point of the sphere");
  if (std::abs(w0) >= std::abs(w1)) {
    w0_ = 1.0;
    w1_ = w1 / w0;
  } else {
    w0_ = w0 / w1;
    w1_ = 1.0;
  }
}

Complex RiemannCoordinate::value() const {
  if (is_infinite()) throw InvalidInput("the point at infinity has no finite coordinate");
  return w1_ / w0_;
}

double RiemannCoordinate::separation(const RiemannCoordinate& other) const {
  return std::abs(w0_ * other.w1_ - w1_ * other.w0_);
}

SpannedSphere SpannedSphere::from_representatives(const ComplexVector& basis0,
                                                  const ComplexVector& basis1) {
  require_same_dim(basis0.dim(), basis1.dim());
  if (basis0.norm() == 0.0 || basis1.norm() == 0.0)
    throw InvalidInput("sphere basis vectors must be nonzero");
  require_orthogonal(basis0, basis1);
  return SpannedSphere(basis0.normalized(), basis1.normalized());
}

SpannedSphere SpannedSphere::from_rays(const Ray& basis0, const Ray& basis1) {
  return from_representatives(basis0.rep(), basis1.rep());
}

SpannedSphere SpannedSphere::through(const Ray& a, const Ray& b) {
  const auto q = gram_schmidt({a.rep(), b.rep()});
  return SpannedSphere(q[0], q[1]);
}

SpannedSphere SpannedSphere::with_basis_phase(int which, double lambda) const {
  const Complex phase = std::polar(1.0, lambda);
  if (which == 0) return SpannedSphere(rep0_.scaled(phase), rep1_);
  if (which == 1) return SpannedSphere(rep0_, rep1_.scaled(phase));
  throw InvalidInput("basis index must be 0 or 1");
}

Ray nonlinear_superpose(const Ray& psi, const Ray& phi, const RiemannCoordinate& z) {
  require_same_dim(psi.dim(), phi.dim());
  require_orthogonal(psi.rep(), phi.rep());
  return project(ComplexVector(z.w0() * psi.rep().amplitudes() + z.w1() * phi.rep().amplitudes()));
}

Ray nonlinear_superpose(const SpannedSphere& sphere, const RiemannCoordinate& z) {
  return project(
      ComplexVector(z.w0() * sphere.rep0().amplitudes() + z.w1() * sphere.rep1().amplitudes()));
}

double sphere_membership(const Ray& x, const SpannedSphere& sphere) {
  require_same_dim(sphere.dim(), x.dim());
  const Eigen::VectorXcd& v = x.rep().amplitudes();
  const Complex c0 = inner(sphere.rep0(), x.rep());
  const Complex c1 = inner(sphere.rep1(), x.rep());
  return (v - c0 * sphere.rep0().amplitudes() - c1 * sphere.rep1().amplitudes()).norm();
}

RiemannCoordinate riemann_coordinate(const Ray& x, const SpannedSphere& sphere) {
  const double residual = sphere_membership(x, sphere);
  if (residual >= kMembershipTolerance) {
    std::ostringstream os;
    os << "ray is not on the sphere (membership residual " << residual << ")";
    throw InvalidInput(os.str());
  }
  return {inner(sphere.rep0(), x.rep()), inner(sphere.rep1(), x.rep())};
}

namespace {

// sqrt(det g) at (theta, phi) for psi = cos(theta/2) r0 + e^{i phi} sin(theta/2) r1.
double area_density(const Eigen::VectorXcd& r0, const Eigen::VectorXcd& r1, double theta,
                    double phi, double scale) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  const Eigen::VectorXcd psi = c * r0 + (e * s) * r1;
  Eigen::VectorXcd d_theta = (-0.5 * s) * r0 + (0.5 * c * e) * r1;
  Eigen::VectorXcd d_phi = (Complex(0.0, 1.0) * e * s) * r1;
  d_theta -= psi.dot(d_theta) * psi;
  d_phi -= psi.dot(d_phi) * psi;
  const double g_tt = scale * d_theta.squaredNorm();
  const double g_pp = scale * d_phi.squaredNorm();
  const double g_tp = scale * d_theta.dot(d_phi).real();
  return std::sqrt(std::max(0.0, g_tt * g_pp - g_tp * g_tp));
}

double midpoint_area(const Eigen::VectorXcd& r0, const Eigen::VectorXcd& r1, int n_theta,
                     int n_phi, double scale) {
  const double h_t = std::numbers::pi / n_theta;
  const double h_p = 2.0 * std::numbers::pi / n_phi;
  double sum = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = (i + 0.5) * h_t;
    double row = 0.0;
    for (int j = 0; j < n_phi; ++j) row += area_density(r0, r1, theta, (j + 0.5) * h_p, scale);
    sum += row;
  }
  return sum * h_t * h_p;
}

}  // namespace

AreaEstimate sphere_area(const SpannedSphere& sphere, KahlerScale scale, double tolerance) {
  constexpr int kMaxLevels = 9;
  const Eigen::VectorXcd& r0 = sphere.rep0().amplitudes();
  const Eigen::VectorXcd& r1 = sphere.rep1().amplitudes();

  // Romberg table on the h^2 expansion of the composite midpoint rule in theta.
  std::vector<std::vector<double>> table;
  int n_theta = 4;
  for (int level = 0; level < kMaxLevels; ++level, n_theta *= 2) {
    std::vector<double> row{midpoint_area(r0, r1, n_theta, std::max(8, n_theta), scale.factor())};
    double factor = 4.0;
    for (int k = 1; k <= level; ++k, factor *= 4.0)
      row.push_back(row[k - 1] + (row[k - 1] - table[level - 1][k - 1]) / (factor - 1.0));
    table.push_back(row);
    if (level >= 2) {
      const double best = row.back();
      const double err = std::abs(best - table[level - 1].back());
      if (err < tolerance) return {best, err, level};
    }
  }
  const double err = std::abs(table.back().back() - table[kMaxLevels - 2].back());
  std::ostringstream os;
  os << "sphere area quadrature did not converge (error estimate " << err << ")";
  throw NumericalError(os.str());
}

}  // namespace gqm
