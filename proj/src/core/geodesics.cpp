#include "gqm/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "gqm/random.hpp"

namespace gqm {

namespace {

constexpr int kMaxShootingIterations = 200;
constexpr double kArrivalTolerance = 1e-8;
constexpr double kFormTolerance = 1e-6;

void require_cp2(const ChartPoint& p) {
  if (p.ambient_dim() != 3) throw InvalidInput("the coordinate sphere check lives in CP^2 (ambient dimension 3)");
}

double radius_sq(const ChartPoint& p) {
  double r = 0.0;
  for (const auto& t : p.coords) r += std::norm(t);
  return r;
}

ChartPoint shifted(const ChartPoint& p, Eigen::Index real_index, double delta) {
  Eigen::VectorXd x = p.real_coords();
  x(real_index) += delta;
  return ChartPoint::from_real(p.base_index, x);
}

int matching_power(double numerical, double first, double second) {
  auto close = [&](double value) {
    return std::abs(value - numerical) <= kFormTolerance * std::max(1e-12, std::abs(numerical));
  };
  if (close(second)) return 2;
  if (close(first)) return 1;
  return 0;
}

double speed_of(const ChartPoint& p, const Eigen::VectorXd& v, KahlerScale scale) {
  return std::sqrt(v.dot(fs_metric(p, scale).g * v));
}

struct State {
  ChartPoint point;
  Eigen::VectorXd velocity;
};

State advance(const State& s, const Eigen::VectorXd& dx, const Eigen::VectorXd& dv) {
  return {ChartPoint::from_real(s.point.base_index, s.point.real_coords() + dx), s.velocity + dv};
}

State rk4_step(const State& s, double h, const GeodesicOptions& opt) {
  const Eigen::VectorXd& v1 = s.velocity;
  const Eigen::VectorXd a1 = geodesic_acceleration(s.point, v1, opt);
  const State s2 = advance(s, 0.5 * h * v1, 0.5 * h * a1);
  const Eigen::VectorXd a2 = geodesic_acceleration(s2.point, s2.velocity, opt);
  const State s3 = advance(s, 0.5 * h * s2.velocity, 0.5 * h * a2);
  const Eigen::VectorXd a3 = geodesic_acceleration(s3.point, s3.velocity, opt);
  const State s4 = advance(s, h * s3.velocity, h * a3);
  const Eigen::VectorXd a4 = geodesic_acceleration(s4.point, s4.velocity, opt);
  return advance(s, (h / 6.0) * (v1 + 2.0 * s2.velocity + 2.0 * s3.velocity + s4.velocity),
                 (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4));
}

// Speed projection and chart switching applied between steps.
State settle(State s, double target_speed, const GeodesicOptions& opt) {
  const double speed = speed_of(s.point, s.velocity, opt.scale);
  if (speed > 0.0) s.velocity *= target_speed / speed;
  if (s.point.max_modulus() > opt.rechart_threshold) {
    const ComplexVector z(homogeneous(s.point));
    Eigen::Index k = 0;
    z.amplitudes().cwiseAbs().maxCoeff(&k);
    auto [q, w] = rechart(s.point, s.velocity, static_cast<std::size_t>(k));
    s = {std::move(q), std::move(w)};
  }
  for (const auto& t : s.point.coords)
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
      throw NumericalError("geodesic left every chart (non-finite coordinates)");
  return s;
}

// Unit horizontal direction at a toward b, with b phase-aligned so <a|b> >= 0.
Eigen::VectorXcd direction_toward(const Ray& a, const Ray& b) {
  const Eigen::VectorXcd& ra = a.rep().amplitudes();
  Eigen::VectorXcd rb = b.rep().amplitudes();
  const Complex overlap = ra.dot(rb);
  if (std::abs(overlap) > 0.0) rb *= std::conj(overlap) / std::abs(overlap);
  Eigen::VectorXcd w = rb - ra.dot(rb) * ra;
  w -= ra.dot(w) * ra;
  const double n = w.norm();
  if (n == 0.0) throw InvalidInput("endpoints coincide; no direction between them");
  return w / n;
}

std::size_t largest_component(const ComplexVector& v) {
  Eigen::Index k = 0;
  v.amplitudes().cwiseAbs().maxCoeff(&k);
  return static_cast<std::size_t>(k);
}

}  // namespace

MetricAtPoint induced_sphere_metric(const ChartPoint& p) {
  require_cp2(p);
  if (p.coords[1] != Complex(0.0)) throw InvalidInput("induced sphere metric needs a point with t_2 = 0");
  return {p, leaf_metric(p)};
}

Eigen::Matrix2d leaf_metric(const ChartPoint& p) {
  require_cp2(p);
  return fs_metric(p).g.topLeftCorner<2, 2>();
}

Eigen::Matrix2d lie_derivative_normal(const ChartPoint& p, NormalDirection which, double eps) {
  require_cp2(p);
  if (!(eps > 0.0)) throw InvalidInput("finite-difference step must be positive");
  const Eigen::Index index = which == NormalDirection::u2 ? 2 : 3;
  return (leaf_metric(shifted(p, index, eps)) - leaf_metric(shifted(p, index, -eps))) / (2.0 * eps);
}

DenominatorReport classify_leaf_metric_form(const ChartPoint& p) {
  require_cp2(p);
  const double numer = 1.0 + std::norm(p.coords[1]);
  const double w = 1.0 + radius_sq(p);
  const double numerical = leaf_metric(p)(0, 0);
  const double first = numer / w;
  const double second = numer / (w * w);
  return {numerical, first, second, matching_power(numerical, first, second)};
}

DenominatorReport classify_lie_derivative_form(const ChartPoint& p, double eps) {
  require_cp2(p);
  const double v2 = p.coords[1].imag();
  const double numer = 2.0 * v2 * (1.0 + std::norm(p.coords[0]));
  const double w = 1.0 + radius_sq(p);
  const double numerical = lie_derivative_normal(p, NormalDirection::v2, eps)(0, 0);
  const double first = numer / w;
  const double second = numer / (w * w);
  return {numerical, first, second, matching_power(numerical, first, second)};
}

Eigen::VectorXd geodesic_acceleration(const ChartPoint& p, const Eigen::VectorXd& v,
                                      const GeodesicOptions& options) {
  const auto m = static_cast<Eigen::Index>(p.real_dim());
  if (v.size() != m) throw DimensionMismatch(p.real_dim(), static_cast<std::size_t>(v.size()));
  const double h = options.christoffel_step;
  const Eigen::MatrixXd g = fs_metric(p, options.scale).g;

  // Gamma_{l,ij} v^i v^j = sum_i v^i (dg_i v)_l - (1/2) v^T dg_l v, where dg_i = d g / d x^i.
  Eigen::VectorXd lowered = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::MatrixXd dg =
        (fs_metric(shifted(p, i, h), options.scale).g - fs_metric(shifted(p, i, -h), options.scale).g) /
        (2.0 * h);
    const Eigen::VectorXd dgv = dg * v;
    lowered += v(i) * dgv;
    lowered(i) -= 0.5 * v.dot(dgv);
  }
  return -g.ldlt().solve(lowered);
}

GeodesicPath integrate_geodesic_flow(const ChartPoint& start, const Eigen::VectorXd& velocity,
                                     double parameter_time, double dt, const GeodesicOptions& options) {
  if (static_cast<std::size_t>(velocity.size()) != start.real_dim())
    throw DimensionMismatch(start.real_dim(), static_cast<std::size_t>(velocity.size()));
  if (!(parameter_time >= 0.0)) throw InvalidInput("geodesic parameter time must be >= 0");
  if (!(dt > 0.0)) throw InvalidInput("geodesic step must be positive");
  const double speed = speed_of(start, velocity, options.scale);

  GeodesicPath path;
  State s{start, velocity};
  double tau = 0.0;
  double length = 0.0;
  double last_speed = speed;
  auto keep = [&](bool force) {
    if (options.keep_samples || force) path.samples.push_back({length, s.point, s.velocity});
  };
  keep(true);
  while (tau < parameter_time) {
    const double h = std::min(dt, parameter_time - tau);
    if (h <= 1e-14 * std::max(1.0, parameter_time)) break;
    s = rk4_step(s, h, options);
    const double raw_speed = speed_of(s.point, s.velocity, options.scale);
    s = settle(std::move(s), speed, options);
    length += 0.5 * h * (last_speed + raw_speed);
    last_speed = speed;
    tau += h;
    if (!options.keep_samples) continue;
    keep(false);
  }
  if (!options.keep_samples) keep(true);
  path.total_length = length;
  return path;
}

GeodesicPath integrate_geodesic(const ChartPoint& start, const Eigen::VectorXd& velocity,
                                double length, double dt, const GeodesicOptions& options) {
  const double speed = speed_of(start, velocity, options.scale);
  if (std::abs(speed - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "geodesic velocity must have unit metric norm (got " << speed << ")";
    throw InvalidInput(os.str());
  }
  return integrate_geodesic_flow(start, velocity, length, dt, options);
}

GeodesicPath geodesic_between(const Ray& a, const Ray& b, int samples) {
  require_same_dim(a.dim(), b.dim());
  if (samples < 2) throw InvalidInput("a geodesic path needs at least two samples");
  const double d = fs_distance(a, b);
  if (d == 0.0) throw InvalidInput("geodesic_between needs two distinct rays");
  const Eigen::VectorXcd& ra = a.rep().amplitudes();
  const Eigen::VectorXcd w = direction_toward(a, b);

  GeodesicPath path;
  path.non_unique = std::abs(inner(a.rep(), b.rep())) < 1e-12;
  path.total_length = d;
  for (int i = 0; i < samples; ++i) {
    const double s = d * static_cast<double>(i) / (samples - 1);
    const ComplexVector psi(std::cos(s) * ra + std::sin(s) * w);
    const Eigen::VectorXcd tangent = -std::sin(s) * ra + std::cos(s) * w;
    const ChartPoint p = best_chart(psi);
    path.samples.push_back({s, p, chart_tangent(psi, tangent, p.base_index)});
  }
  return path;
}

ArrivalResult geodesic_arrival_length(const Ray& a, const Ray& b, double dt,
                                      const GeodesicOptions& options) {
  require_same_dim(a.dim(), b.dim());
  if (!(dt > 0.0)) throw InvalidInput("geodesic step must be positive");
  const std::size_t k = largest_component(a.rep());
  const ChartPoint start = chart_of(a.rep(), k);
  Eigen::VectorXd v = chart_tangent(a.rep(), direction_toward(a, b), k);
  v /= speed_of(start, v, options.scale);

  // q(s) = |<gamma(s)|b>|^2 peaks on arrival; its derivative has a simple zero there.
  auto slope = [&](const State& s) {
    const Ray x = ray_of(s.point);
    const Eigen::VectorXcd tangent = hilbert_tangent(s.point, s.velocity);
    const Complex c = x.rep().amplitudes().dot(b.rep().amplitudes());
    return 2.0 * (std::conj(c) * tangent.dot(b.rep().amplitudes())).real();
  };

  const double max_length = 0.5 * std::numbers::pi * std::sqrt(options.scale.factor()) * 1.5;
  GeodesicOptions opt = options;
  State s{start, v};
  double length = 0.0;
  while (length < max_length) {
    const State next = settle(rk4_step(s, dt, opt), 1.0, opt);
    // Positive slope at s and non-positive at the next sample brackets the peak.
    if (length > 0.0 || slope(s) > 0.0) {
      if (slope(next) <= 0.0) {
        double lo = 0.0;
        double hi = dt;
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (slope(rk4_step(s, mid, opt)) > 0.0) lo = mid;
          else hi = mid;
        }
        const double h = 0.5 * (lo + hi);
        const Ray end = ray_of(rk4_step(s, h, opt).point);
        return {length + h, fs_distance(end, b)};
      }
    }
    s = next;
    length += dt;
  }
  throw NumericalError("geodesic did not pass the target ray within half a great circle");
}

GeodesyCertificate total_geodesy_certificate(const Ray& a, const Ray& b, std::size_t ambient_dim,
                                             double dt, std::uint64_t seed,
                                             const GeodesicOptions& options) {
  if (a.dim() != ambient_dim || b.dim() != ambient_dim)
    throw DimensionMismatch(ambient_dim, a.dim() != ambient_dim ? a.dim() : b.dim());
  if (!(dt > 0.0)) throw InvalidInput("geodesic step must be positive");
  if (fs_distance(a, b) == 0.0) throw InvalidInput("certificate needs two distinct rays");
  const SpannedSphere sphere = SpannedSphere::through(a, b);

  const std::size_t ka = largest_component(a.rep());
  const std::size_t kb = largest_component(b.rep());
  const ChartPoint start = chart_of(a.rep(), ka);
  const Eigen::VectorXd target = chart_of(b.rep(), kb).real_coords();

  GeodesicOptions fast = options;
  fast.keep_samples = false;

  auto endpoint = [&](const Eigen::VectorXd& v) -> std::optional<ChartPoint> {
    const GeodesicPath p = integrate_geodesic_flow(start, v, 1.0, dt, fast);
    const ComplexVector z(homogeneous(p.samples.back().point));
    if (std::abs(z[kb]) < 1e-3 * z.amplitudes().cwiseAbs().maxCoeff()) return std::nullopt;
    return chart_of(z, kb);
  };
  auto residual_of = [&](const Eigen::VectorXd& v) -> std::optional<Eigen::VectorXd> {
    const auto end = endpoint(v);
    if (!end) return std::nullopt;
    return Eigen::VectorXd(end->real_coords() - target);
  };

  // Seed: the chord direction with length sin(d) (short of the true arclength),
  // pushed off the sphere by a few percent.
  Rng rng(seed);
  Eigen::VectorXcd guess = direction_toward(a, b);
  {
    const Eigen::VectorXcd& rb = b.rep().amplitudes();
    const Eigen::VectorXcd& ra = a.rep().amplitudes();
    Eigen::VectorXcd off = rng.gaussian_vector(ambient_dim).amplitudes();
    off -= ra.dot(off) * ra;
    off -= guess.dot(off) * guess;
    const double off_norm = off.norm();
    const double chord = (rb - ra.dot(rb) * ra).norm();
    guess *= std::max(chord, 0.1);
    if (off_norm > 0.0) guess += 0.03 * chord * off / off_norm;
  }
  Eigen::VectorXd v = chart_tangent(a.rep(), guess, ka);

  GeodesyCertificate cert;
  auto r = residual_of(v);
  if (!r) throw NumericalError("shooting seed does not reach the target chart");
  double best = r->norm();
  const Eigen::Index m = v.size();
  while (cert.iterations < kMaxShootingIterations) {
    if (fs_distance(ray_of(*endpoint(v)), b) < 1e-12) break;
    ++cert.iterations;
    Eigen::MatrixXd jac(m, m);
    const double h = 1e-6;
    bool ok = true;
    for (Eigen::Index j = 0; j < m && ok; ++j) {
      Eigen::VectorXd vp = v, vm = v;
      vp(j) += h;
      vm(j) -= h;
      const auto rp = residual_of(vp);
      const auto rm = residual_of(vm);
      if (!rp || !rm) ok = false;
      else jac.col(j) = (*rp - *rm) / (2.0 * h);
    }
    if (!ok) break;
    const Eigen::VectorXd step = -jac.completeOrthogonalDecomposition().solve(*r);
    double alpha = 1.0;
    bool improved = false;
    for (int trial = 0; trial < 20; ++trial, alpha *= 0.5) {
      const Eigen::VectorXd candidate = v + alpha * step;
      const auto rc = residual_of(candidate);
      if (rc && rc->norm() < best) {
        v = candidate;
        r = rc;
        best = rc->norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  GeodesicOptions full = options;
  full.keep_samples = true;
  cert.path = integrate_geodesic_flow(start, v, 1.0, dt, full);
  const Ray end = ray_of(cert.path.samples.back().point);
  cert.arrival_residual = fs_distance(end, b);
  cert.converged = cert.arrival_residual < kArrivalTolerance;
  for (const auto& sample : cert.path.samples)
    cert.max_offslice_residual =
        std::max(cert.max_offslice_residual, sphere_membership(ray_of(sample.point), sphere));
  cert.integrated_length = cert.path.total_length / std::sqrt(options.scale.factor());
  cert.length_match = std::abs(cert.integrated_length - fs_distance(a, b));
  return cert;
}

}  // namespace gqm
