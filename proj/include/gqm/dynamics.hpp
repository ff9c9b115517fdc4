// Schroedinger evolution as the Hamiltonian flow of h = <H> on projective
// space, cross-checked against exact unitary evolution.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gqm/linalg.hpp"
#include "gqm/projective.hpp"

namespace gqm {

struct TrackedObservable {
  std::string label;
  HermitianOperator op;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Ray> points;
  std::vector<std::pair<std::string, std::vector<double>>> observables_tracked;
};

/// Fixed-step RK4 on d psi/dt = -i(H - <H>) psi, renormalized and re-gauged
/// after every step. The final step is shortened to land on t_end. A step
/// whose norm drifts by more than 1e-8 before renormalization throws
/// NumericalError.
Trajectory flow_integrate(const HermitianOperator& H, const Ray& start, double t_end, double dt,
                          const std::vector<TrackedObservable>& tracked = {});

/// Max over samples of the distance between the integrated flow and the ray
/// of exp(-iHt) start.
double flow_vs_exact_deviation(const HermitianOperator& H, const Ray& start, double t_end, double dt);

/// |central difference of <F> along exp(-iHt) at t = 0 - <-i[F,H]>|.
double ehrenfest_residual(const HermitianOperator& F, const HermitianOperator& H, const Ray& at,
                          double eps);

}  // namespace gqm
