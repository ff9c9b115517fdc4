// Geodesics of the Fubini-Study metric in affine charts, the induced metric
// on the coordinate sphere t_2 = 0 of CP^2 with its normal Lie derivatives,
// and numerical certification that spanned spheres are totally geodesic.

#pragma once

#include <cstdint>
#include <vector>

#include "gqm/chart.hpp"
#include "gqm/projective.hpp"
#include "gqm/scale.hpp"

namespace gqm {

struct GeodesicSample {
  double arclength;
  ChartPoint point;
  Eigen::VectorXd velocity;  // chart velocity d(u, v)/d(parameter)
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  double total_length = 0.0;
  /// Set by geodesic_between for orthogonal endpoints, where a whole circle
  /// of geodesics connects them and the returned one is a canonical choice.
  bool non_unique = false;
};

struct GeodesicOptions {
  KahlerScale scale = KahlerScale::statistical();
  /// Switch chart once some |t_i| exceeds this; the new base is the largest
  /// homogeneous component, which leaves every |t_i| <= 1, so a switch back
  /// needs a further factor of the threshold. Charts stay valid up to 10;
  /// the default keeps the Christoffel symbols, and the step error, small.
  double rechart_threshold = 2.0;
  double christoffel_step = 1e-5;
  bool keep_samples = true;
};

// -- Induced structure on t_2 = 0 in CP^2 -----------------------------------

/// The (u_1, v_1) block of fs_metric; requires ambient dimension 3 and t_2 = 0.
MetricAtPoint induced_sphere_metric(const ChartPoint& p);

/// The (u_1, v_1) block of fs_metric at an arbitrary CP^2 chart point: the
/// metric induced on the leaf t_2 = const through p.
Eigen::Matrix2d leaf_metric(const ChartPoint& p);

enum class NormalDirection { u2, v2 };

/// Central-difference Lie derivative of the leaf metric along the coordinate
/// field d/du_2 or d/dv_2 (coordinate fields commute, so this is the
/// derivative of the block components).
Eigen::Matrix2d lie_derivative_normal(const ChartPoint& p, NormalDirection which, double eps);

/// How a closed form with denominator (1 + |t|^2)^power compares with the
/// numerical value. matching_power is 1, 2, or 0 when neither matches to
/// relative tolerance 1e-6.
struct DenominatorReport {
  double numerical;
  double first_power;
  double second_power;
  int matching_power;
};

/// Leaf metric coefficient (1 + u_2^2 + v_2^2) / (1 + |t|^2)^power against leaf_metric.
DenominatorReport classify_leaf_metric_form(const ChartPoint& p);

/// Lie derivative coefficient 2 v_2 (1 + u_1^2 + v_1^2) / (1 + |t|^2)^power against
/// the (u_1, u_1) entry of lie_derivative_normal along v_2.
DenominatorReport classify_lie_derivative_form(const ChartPoint& p, double eps);

// -- Geodesic integration ---------------------------------------------------

/// Geodesic acceleration -Gamma(v, v) with Christoffel symbols from central
/// differences of the metric.
Eigen::VectorXd geodesic_acceleration(const ChartPoint& p, const Eigen::VectorXd& v,
                                      const GeodesicOptions& options = {});

/// RK4 on the geodesic equation for the given parameter time, arbitrary
/// initial speed. The speed is held at its initial value after each step.
GeodesicPath integrate_geodesic_flow(const ChartPoint& start, const Eigen::VectorXd& velocity,
                                     double parameter_time, double dt,
                                     const GeodesicOptions& options = {});

/// Unit-speed geodesic of the given arclength. The velocity must have metric
/// norm 1 (to 1e-6).
GeodesicPath integrate_geodesic(const ChartPoint& start, const Eigen::VectorXd& velocity,
                                double length, double dt, const GeodesicOptions& options = {});

/// Closed-form great circle on the sphere spanned by a and b, with samples
/// count points (at least 2).
GeodesicPath geodesic_between(const Ray& a, const Ray& b, int samples = 65);

/// Integrates the unit-speed geodesic leaving a toward b (initial direction
/// the horizontal part of the phase-aligned b) until it first passes closest
/// to b, and returns that arclength. arrival_residual is fs_distance there.
struct ArrivalResult {
  double length;
  double arrival_residual;
};
ArrivalResult geodesic_arrival_length(const Ray& a, const Ray& b, double dt,
                                      const GeodesicOptions& options = {});

struct GeodesyCertificate {
  double max_offslice_residual = 0.0;  // max sphere_membership along the path
  double length_match = 0.0;           // |integrated length - fs_distance(a, b)|
  double integrated_length = 0.0;
  double arrival_residual = 0.0;       // fs_distance(endpoint, b)
  int iterations = 0;
  bool converged = false;
  GeodesicPath path;
};

/// Shooting solution of the boundary-value geodesic from a to b in the full
/// ambient metric: Gauss-Newton on the initial chart velocity (all 2(n-1)
/// real directions, not only those tangent to the spanned sphere), from a
/// seeded guess perturbed off the sphere. Stops once the arrival distance is
/// below 1e-8 and no longer improving, or after 200 iterations.
GeodesyCertificate total_geodesy_certificate(const Ray& a, const Ray& b, std::size_t ambient_dim,
                                             double dt, std::uint64_t seed = 0x5eed,
                                             const GeodesicOptions& options = {});

}  // namespace gqm
