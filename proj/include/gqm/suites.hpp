// Verification suites behind the command-line tool. Each returns a Report;
// the evolve and two-slit suites also return the data they export.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqm/dynamics.hpp"
#include "gqm/geodesics.hpp"
#include "gqm/interference.hpp"
#include "gqm/report.hpp"
#include "gqm/serialize.hpp"

namespace gqm {

struct KahlerAuditOptions {
  std::vector<std::size_t> dims{2, 3, 4, 5, 6, 7, 8};
  std::vector<std::uint64_t> seeds{0x5eed};
  std::size_t trials = 100;
  double tolerance_scale = 1.0;
};

/// Bracket, metric, identity-kernel, horizontality, scale, Killing,
/// uncertainty and eigen-extremum checks on random (F, G, ray) per trial,
/// plus the spin-1/2 derivation of the factor 2. No trials, no entries.
Report kahler_audit(const KahlerAuditOptions& options);

struct GeodesicVerifyOptions {
  std::vector<std::size_t> dims{2, 3, 4};
  std::size_t pairs = 20;
  double dt = 5e-3;
  std::uint64_t seed = 0x5eed;
  double tolerance_scale = 1.0;
};

struct GeodesicVerifyResult {
  Report report;
  std::optional<GeodesicPath> first_path;
};

/// Area of a random spanned sphere per dimension, then shooting certificates
/// for random pairs. A step above 0.1 is accepted with a warning and with the
/// integration tolerances widened by (dt / 0.1)^4.
GeodesicVerifyResult geodesic_verify(const GeodesicVerifyOptions& options);

struct TwoSlitConfig {
  double wavelength = 500e-9;
  double distance = 1.0;
  std::vector<double> slit_centers{-5e-5, 5e-5};
  double slit_width = 1e-5;
  GridSpec wall{-2e-4, 2e-4, 2048};
  GridSpec screen{-2.5e-2, 2.5e-2, 2048};
  std::string beam = "plane";  // or "gaussian"
  double waist = 2e-4;
  /// Half-width of the central screen region used to measure fringes.
  double fringe_window = 1.1e-2;
};

/// Keys: wavelength, distance, slit_centers (comma list), slit_width,
/// wall_min, wall_max, wall_points, screen_min, screen_max, screen_points,
/// beam, waist, fringe_window. Unknown keys and bad values throw ConfigError.
TwoSlitConfig two_slit_config_from(const KeyValueConfig& config);

struct TwoSlitResult {
  Report report;
  InterferencePattern pattern;
};

TwoSlitResult two_slit(const TwoSlitConfig& config, std::uint64_t seed = 0x5eed, double tolerance_scale = 1.0);

/// Operator spec: a JSON matrix literal, or one of sigma_x, sigma_y,
/// sigma_z, identity:N, oscillator:N (a^H a + 1/2), position:N, momentum:N.
HermitianOperator parse_operator_spec(std::string_view spec);
/// State spec: a JSON vector literal, or one of up, down, plus, minus,
/// plus_y, minus_y (dimension 2), level:K (basis vector, dimension `dim`).
Ray parse_state_spec(std::string_view spec, std::size_t dim);

struct EvolveSpec {
  HermitianOperator hamiltonian;
  Ray start;
  double t_end;
  double dt;
  /// Empty: the energy, plus the Pauli operators in dimension 2.
  std::vector<TrackedObservable> tracked;
};

struct EvolveResult {
  Report report;
  Trajectory trajectory;
};

/// Flow integration with the exact-propagator comparison, energy
/// conservation, and the Ehrenfest residual of each tracked observable.
EvolveResult evolve(const EvolveSpec& spec, double tolerance_scale = 1.0);

/// H = sigma_z from the +x ray for a quarter period, checked against the
/// closed-form precession, with the spin-1/2 bracket and metric values.
EvolveResult demo_spin(double dt = 1e-3, double tolerance_scale = 1.0);

}  // namespace gqm
