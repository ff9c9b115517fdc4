// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Reference values are computed here directly from Eigen
// where a closed form exists.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gqm/dynamics.hpp"
#include "gqm/geodesics.hpp"
#include "gqm/interference.hpp"
#include "gqm/kahler.hpp"
#include "gqm/operators.hpp"
#include "gqm/projective.hpp"
#include "gqm/random.hpp"
#include "gqm/suites.hpp"

using namespace gqm;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double overlap_sq(const Ray& a, const Ray& b) { return std::norm(a.rep().amplitudes().dot(b.rep().amplitudes())); }

double direct_commutator(const HermitianOperator& F, const HermitianOperator& G, const Ray& x) {
  const Eigen::MatrixXcd& f = F.entries();
  const Eigen::MatrixXcd& g = G.entries();
  const Eigen::VectorXcd& psi = x.rep().amplitudes();
  return psi.dot(-kI * (f * g - g * f) * psi).real();
}

double direct_variance(const HermitianOperator& F, const Ray& x) {
  const Eigen::VectorXcd& psi = x.rep().amplitudes();
  const Eigen::VectorXcd fpsi = F.entries() * psi;
  const double m = psi.dot(fpsi).real();
  return (fpsi - m * psi).squaredNorm();
}

// Cycles dims 2..8 so every dimension gets an equal share of the trials.
std::size_t sweep_dim(int trial) { return 2 + static_cast<std::size_t>(trial % 7); }

Outcome criterion_1() {
  Rng rng(101);
  double closed = 0.0, integrated = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = sweep_dim(t);
    const Ray a = rng.ray(n);
    const Ray b = rng.ray(n);
    const double p = overlap_sq(a, b);
    const double d = fs_distance(a, b);
    closed = std::max(closed, std::abs(std::cos(d) * std::cos(d) - p));
    const double L = geodesic_arrival_length(a, b, 5e-3).length;
    integrated = std::max(integrated, std::abs(std::cos(L) * std::cos(L) - p));
  }
  return {closed < 1e-12 && integrated < 1e-8,
          fmt("1000 pairs, dims 2-8: closed form %.2e < 1e-12, integrated geodesic %.2e < 1e-8", closed,
              integrated)};
}

Outcome criterion_2() {
  Rng rng(202);
  double offslice = 0.0, length = 0.0;
  int pairs = 0;
  bool converged = true;
  for (std::size_t n : {3, 4}) {
    for (int t = 0; t < 20; ++t) {
      const Ray a = rng.ray(n);
      const Ray b = rng.ray(n);
      const auto c = total_geodesy_certificate(a, b, n, 5e-3, 1000 + static_cast<std::uint64_t>(t));
      offslice = std::max(offslice, c.max_offslice_residual);
      length = std::max(length, c.length_match);
      converged = converged && c.converged;
      ++pairs;
    }
  }
  return {converged && offslice < 1e-6 && length < 1e-6,
          fmt("%.0f shooting geodesics in dims 3,4: off-sphere %.2e < 1e-6, length %.2e < 1e-6", pairs, offslice,
              length)};
}

Outcome criterion_3() {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      Eigen::VectorXd x(4);
      x << -2.0 + 4.0 * i / 9.0, -2.0 + 4.0 * j / 9.0, 0.0, 0.0;
      const ChartPoint p = ChartPoint::from_real(0, x);
      worst = std::max({worst, lie_derivative_normal(p, NormalDirection::u2, 1e-4).cwiseAbs().maxCoeff(),
                        lie_derivative_normal(p, NormalDirection::v2, 1e-4).cwiseAbs().maxCoeff()});
    }
  Eigen::VectorXd off(4);
  off << 0.0, 0.0, 0.0, 0.1;
  const double control =
      lie_derivative_normal(ChartPoint::from_real(0, off), NormalDirection::v2, 1e-4).cwiseAbs().maxCoeff();
  return {worst < 1e-6 && control > 1e-3,
          fmt("10x10 slice grid: max |Lie derivative| %.2e < 1e-6; off-slice control %.4f nonzero", worst, control)};
}

Outcome criterion_4() {
  Rng rng(404);
  double worst = 0.0;
  for (std::size_t n : {2, 3, 8}) {
    const auto s = SpannedSphere::through(rng.ray(n), rng.ray(n));
    worst = std::max(worst, std::abs(sphere_area(s).area - kPi));
  }
  return {worst < 1e-6, fmt("spanned-sphere area in dims 2,3,8: max |area - pi| %.2e < 1e-6", worst)};
}

// The factor relating the bare Hilbert-space symplectic product to the
// commutator, derived at the +y ray of spin one half.
double spin_half_factor() {
  const Ray y = project(ComplexVector{1.0, kI});
  const auto Xz = hamiltonian_vector_field(ops::pauli_z(), y);
  const auto Xx = hamiltonian_vector_field(ops::pauli_x(), y);
  return direct_commutator(ops::pauli_z(), ops::pauli_x(), y) / symplectic_eval(KahlerScale::statistical(), Xz, Xx);
}

Outcome criterion_5() {
  const double factor = spin_half_factor();
  const bool factor_ok = std::abs(factor - KahlerScale::observable().factor()) < 1e-12;
  Rng rng(505);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = sweep_dim(t);
    const auto F = rng.hermitian(n);
    const auto G = rng.hermitian(n);
    const Ray x = rng.ray(n);
    worst = std::max(worst, std::abs(poisson_bracket(F, G, x) - direct_commutator(F, G, x)));
  }
  return {factor_ok && worst < 1e-12,
          fmt("spin-1/2 factor %.15f = 2; 1000 trials dims 2-8: max |{f,g} - <-i[F,G]>| %.2e < 1e-12", factor,
              worst)};
}

Outcome criterion_6() {
  Rng rng(606);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = sweep_dim(t);
    const auto F = rng.hermitian(n);
    const Ray x = rng.ray(n);
    worst = std::max(worst, std::abs(riemannian_product(F, F, x) - 2.0 * direct_variance(F, x)));
  }
  // Exactly representable eigenstates: diagonal operators at basis rays.
  double exact = 0.0;
  for (std::size_t n = 2; n <= 8; ++n) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) D(i, i) = rng.uniform(-3.0, 3.0);
    const HermitianOperator F(D);
    for (std::size_t k = 0; k < n; ++k)
      exact = std::max(exact, std::abs(riemannian_product(F, F, project(ComplexVector::basis(n, k)))));
  }
  // Eigensolver eigenvectors carry their own rounding.
  double solved = 0.0;
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto F = rng.hermitian(n);
    for (const auto& e : eigen_extrema(F)) solved = std::max(solved, std::abs(riemannian_product(F, F, e.ray)));
  }
  return {worst < 1e-12 && exact == 0.0 && solved < 1e-12,
          fmt("max |(f,f) - 2 var| %.2e < 1e-12; exact eigenstates %g (== 0), eigensolver states %.2e < 1e-12", worst,
              exact, solved)};
}

Outcome criterion_7() {
  Rng rng(707);
  double min_ehrenfest = 1e300;
  double min_rk4 = 1e300;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = sweep_dim(t);
    const auto F = rng.hermitian(n);
    const auto H = rng.hermitian(n);
    const Ray x = rng.ray(n);
    const double r2 = ehrenfest_residual(F, H, x, 1e-2);
    const double r3 = ehrenfest_residual(F, H, x, 1e-3);
    const double r4 = ehrenfest_residual(F, H, x, 1e-4);
    min_ehrenfest = std::min({min_ehrenfest, std::log10(r2 / r3), std::log10(r3 / r4)});
    const double e1 = flow_vs_exact_deviation(H, x, 1.0, 0.04);
    const double e2 = flow_vs_exact_deviation(H, x, 1.0, 0.02);
    const double e3 = flow_vs_exact_deviation(H, x, 1.0, 0.01);
    min_rk4 = std::min({min_rk4, std::log2(e1 / e2), std::log2(e2 / e3)});
  }
  return {min_ehrenfest >= 1.9 && min_rk4 >= 3.8,
          fmt("Ehrenfest order over eps 1e-2..1e-4: min %.3f >= 1.9; RK4 order under dt halving: min %.3f >= 3.8",
              min_ehrenfest, min_rk4)};
}

Outcome criterion_8() {
  Rng rng(808);
  // The identity direction is annihilated exactly; a shift by it changes the
  // field only through rounding of F + alpha I.
  double kernel = 0.0, shift = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = sweep_dim(t);
    const double alpha = rng.uniform(-10.0, 10.0);
    const Ray x = rng.ray(n);
    const auto F = rng.hermitian(n);
    kernel = std::max(kernel, hamiltonian_vector_field(ops::identity(n).scaled(alpha), x).norm());
    const auto a = hamiltonian_vector_field(F, x);
    const auto b = hamiltonian_vector_field(F.shifted(alpha), x);
    shift = std::max(shift, (a.vec().amplitudes() - b.vec().amplitudes()).norm() / (1.0 + std::abs(alpha)));
  }

  double closure = 0.0;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(20);
    psi.head(10) = rng.gaussian_vector(10).amplitudes();
    closure = std::max(closure, commutator_closure_residual(ops::position(20), ops::momentum(20),
                                                            project(ComplexVector(psi)), 1e-2));
  }

  double min_slack = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = sweep_dim(t);
    min_slack = std::min(min_slack, uncertainty_audit(rng.hermitian(n), rng.hermitian(n), rng.ray(n)).slack);
  }
  const double saturation =
      std::abs(uncertainty_audit(ops::pauli_z(), ops::pauli_x(), project(ComplexVector{1.0, kI})).slack);

  const bool pass = kernel == 0.0 && shift < 1e-12 && closure < 1e-8 && min_slack >= -1e-12 && saturation < 1e-10;
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "X_{alpha I} = %g (== 0), shift %.2e < 1e-12(1+|alpha|); q,p closure (n=20) %.2e < 1e-8; "
                "min slack %.2e >= -1e-12; saturation %.2e < 1e-10",
                kernel, shift, closure, min_slack, saturation);
  return {pass, buf};
}

Outcome criterion_9() {
  const TwoSlitConfig c;
  const SlitWall wall = build_wall(c.wall, c.slit_centers, c.slit_width);
  const ComplexVector psi = plane_wave(c.wall);
  const auto pat = propagate_to_screen(wall, psi, c.wavelength, c.distance, c.screen);
  const double decomposition = decomposition_residual(pat);
  const double phase = phase_invariance_check(wall, psi, c.wavelength, c.distance, c.screen, kPi / 3);
  Rng rng(909);
  const double poisson = projector_poisson_check(wall, rng.ray(c.wall.points));
  const auto fringe = measure_fringe_spacing(pat, c.fringe_window);
  const double expected = c.wavelength * c.distance / (c.slit_centers[1] - c.slit_centers[0]);
  const double fringe_error = std::abs(fringe.spacing - expected);
  const double cell = c.screen.spacing();
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "decomposition %.2e < 1e-12; phase invariance %.2e < 1e-12; projector bracket %.2e < 1e-12; "
                "fringe spacing %.6e vs %.6e, error %.2e < cell %.2e",
                decomposition, phase, poisson, fringe.spacing, expected, fringe_error, cell);
  return {decomposition < 1e-12 && phase < 1e-12 && poisson < 1e-12 && fringe_error < cell, buf};
}

Outcome criterion_10() {
  Rng rng(1010);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = sweep_dim(t);
    const auto sphere = SpannedSphere::through(rng.ray(n), rng.ray(n));
    const Ray x = nonlinear_superpose(sphere, RiemannCoordinate(rng.complex_normal(), rng.complex_normal()));
    const RiemannCoordinate z = riemann_coordinate(x, sphere);
    for (int k = 0; k <= 16; ++k) {
      const double lambda = 2.0 * kPi * k / 16.0;
      const RiemannCoordinate expected(z.w0(), std::polar(1.0, -lambda) * z.w1());
      worst = std::max(worst, riemann_coordinate(x, sphere.with_basis_phase(1, lambda)).separation(expected));
    }
  }
  return {worst < 1e-12, fmt("100 spheres x 17 phases: max coordinate residual %.2e < 1e-12", worst)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                       criterion_5, criterion_6, criterion_7, criterion_8,
                                                       criterion_9, criterion_10};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
