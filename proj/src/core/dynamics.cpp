#include "gqm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gqm {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kNormDriftPerStep = 1e-8;

Eigen::VectorXcd generator(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd hpsi = h * psi;
  const double energy = psi.dot(hpsi).real() / psi.squaredNorm();
  return -I * (hpsi - energy * psi);
}

Eigen::VectorXcd rk4_step(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi, double dt) {
  const Eigen::VectorXcd k1 = generator(h, psi);
  const Eigen::VectorXcd k2 = generator(h, psi + 0.5 * dt * k1);
  const Eigen::VectorXcd k3 = generator(h, psi + 0.5 * dt * k2);
  const Eigen::VectorXcd k4 = generator(h, psi + dt * k3);
  return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void validate_times(double t_end, double dt) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidInput("t_end must be finite and >= 0");
  if (t_end == 0.0) return;
  if (!(dt > 0.0)) throw InvalidInput("dt must be positive");
  if (dt > t_end) throw InvalidInput("dt must not exceed t_end");
}

}  // namespace

Trajectory flow_integrate(const HermitianOperator& H, const Ray& start, double t_end, double dt,
                          const std::vector<TrackedObservable>& tracked) {
  require_same_dim(H.dim(), start.dim());
  for (const auto& obs : tracked) require_same_dim(H.dim(), obs.op.dim());
  validate_times(t_end, dt);

  Trajectory traj;
  for (const auto& obs : tracked) traj.observables_tracked.emplace_back(obs.label, std::vector<double>{});
  auto record = [&](double t, const Ray& x) {
    traj.times.push_back(t);
    traj.points.push_back(x);
    for (std::size_t i = 0; i < tracked.size(); ++i)
      traj.observables_tracked[i].second.push_back(expectation(tracked[i].op, x.rep()));
  };

  record(0.0, start);
  if (t_end == 0.0) return traj;

  // Steps of size dt, the last one shortened; a remainder below 1e-12 dt is absorbed.
  const auto full_steps = static_cast<long>(std::floor(t_end / dt * (1.0 + 1e-12)));
  Eigen::VectorXcd psi = start.rep().amplitudes();
  double t = 0.0;
  for (long step = 1;; ++step) {
    double h = dt;
    double t_next = static_cast<double>(step) * dt;
    if (step > full_steps || t_next > t_end) {
      t_next = t_end;
      h = t_end - t;
      if (h <= 1e-12 * dt) break;
    }
    const Eigen::VectorXcd next = rk4_step(H.entries(), psi, h);
    const double drift = std::abs(next.norm() - 1.0);
    if (drift > kNormDriftPerStep) {
      std::ostringstream os;
      os << "flow step at t = " << t << " rejected: norm drift " << drift << " exceeds "
         << kNormDriftPerStep;
      throw NumericalError(os.str());
    }
    const Ray x = project(ComplexVector(next));
    psi = x.rep().amplitudes();
    t = t_next;
    record(t, x);
    if (t >= t_end) break;
  }
  return traj;
}

double flow_vs_exact_deviation(const HermitianOperator& H, const Ray& start, double t_end, double dt) {
  const Trajectory traj = flow_integrate(H, start, t_end, dt);
  const auto spec = H.spectrum();
  const Eigen::VectorXcd coeffs = spec.vectors.adjoint() * start.rep().amplitudes();
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    Eigen::VectorXcd phased = coeffs;
    for (Eigen::Index k = 0; k < phased.size(); ++k)
      phased(k) *= std::polar(1.0, -spec.values(k) * traj.times[i]);
    const Ray exact = project(ComplexVector(spec.vectors * phased));
    worst = std::max(worst, fs_distance(traj.points[i], exact));
  }
  return worst;
}

double ehrenfest_residual(const HermitianOperator& F, const HermitianOperator& H, const Ray& at,
                          double eps) {
  require_same_dim(F.dim(), H.dim());
  require_same_dim(F.dim(), at.dim());
  if (!(eps > 0.0)) throw InvalidInput("finite-difference step must be positive");
  const double f_plus = expectation(F, evolve_exact(H, at.rep(), eps));
  const double f_minus = expectation(F, evolve_exact(H, at.rep(), -eps));
  const double derivative = (f_plus - f_minus) / (2.0 * eps);
  return std::abs(derivative - commutator_expectation(F, H, at.rep()));
}

}  // namespace gqm
