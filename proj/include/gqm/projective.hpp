// The projective state space: rays, Fubini-Study distance, transition
// probabilities and the spheres spanned by pairs of rays.

#pragma once

#include <cstddef>

#include "gqm/linalg.hpp"
#include "gqm/scale.hpp"

namespace gqm {

/// A point of projective space, stored as its gauge-fixed unit representative:
/// the first component with modulus above 1e-12 is real and positive.
class Ray {
 public:
  static Ray from(const ComplexVector& psi);

  const ComplexVector& rep() const noexcept { return rep_; }
  std::size_t dim() const noexcept { return rep_.dim(); }

 private:
  explicit Ray(ComplexVector rep) : rep_(std::move(rep)) {}
  ComplexVector rep_;
};

Ray project(const ComplexVector& psi);

/// Geodesic distance arccos|<a|b>| in the statistical metric, in [0, pi/2].
double fs_distance(const Ray& a, const Ray& b);

/// |<a|b>|^2, cross-checked against cos^2(fs_distance(a, b)).
double transition_probability(const Ray& a, const Ray& b);

/// Homogeneous coordinate (w0 : w1) on a spanned sphere; z = w1 / w0.
/// Stored divided by its larger-modulus component, so that component is 1.
class RiemannCoordinate {
 public:
  RiemannCoordinate(Complex w0, Complex w1);
  static RiemannCoordinate finite(Complex z) { return {1.0, z}; }
  static RiemannCoordinate infinity() { return {0.0, 1.0}; }

  Complex w0() const noexcept { return w0_; }
  Complex w1() const noexcept { return w1_; }
  bool is_infinite() const noexcept { return w0_ == Complex(0.0); }
  /// z = w1/w0; throws for the point at infinity.
  Complex value() const;

  /// |w0 w1' - w1 w0'| for the max-modulus normalized pairs; zero iff equal.
  double separation(const RiemannCoordinate& other) const;

 private:
  Complex w0_;
  Complex w1_;
};

/// The projective line through two rays, fixed together with a pair of
/// orthonormal basis representatives (these fix the Riemann coordinate).
class SpannedSphere {
 public:
  /// Basis vectors must be orthogonal (overlap below 1e-10); they are used
  /// as representatives after normalization, without gauge fixing.
  static SpannedSphere from_representatives(const ComplexVector& basis0,
                                            const ComplexVector& basis1);
  static SpannedSphere from_rays(const Ray& basis0, const Ray& basis1);
  /// Orthogonalizes b against a first. Throws when a and b are the same ray.
  static SpannedSphere through(const Ray& a, const Ray& b);

  const ComplexVector& rep0() const noexcept { return rep0_; }
  const ComplexVector& rep1() const noexcept { return rep1_; }
  Ray basis0() const { return Ray::from(rep0_); }
  Ray basis1() const { return Ray::from(rep1_); }
  std::size_t dim() const noexcept { return rep0_.dim(); }

  /// Same point set, with rep_k multiplied by exp(i lambda).
  SpannedSphere with_basis_phase(int which, double lambda) const;

 private:
  SpannedSphere(ComplexVector r0, ComplexVector r1) : rep0_(std::move(r0)), rep1_(std::move(r1)) {}
  ComplexVector rep0_;
  ComplexVector rep1_;
};

/// project(w0 psi + w1 phi) for orthogonal basis rays.
Ray nonlinear_superpose(const Ray& psi, const Ray& phi, const RiemannCoordinate& z);
Ray nonlinear_superpose(const SpannedSphere& sphere, const RiemannCoordinate& z);

/// |x - P_span x| for the orthogonal projector onto the sphere's 2-plane.
double sphere_membership(const Ray& x, const SpannedSphere& sphere);

/// Inverse of nonlinear_superpose on the sphere. Throws when the membership
/// residual is above 1e-10.
RiemannCoordinate riemann_coordinate(const Ray& x, const SpannedSphere& sphere);

struct AreaEstimate {
  double area;
  double error_estimate;
  int refinements;
};

/// Surface integral of the area form of the given metric scale over the
/// sphere, on a midpoint grid in Bloch angles with Richardson extrapolation.
/// Throws NumericalError if the estimate does not reach `tolerance`.
AreaEstimate sphere_area(const SpannedSphere& sphere,
                         KahlerScale scale = KahlerScale::statistical(), double tolerance = 1e-6);

}  // namespace gqm
