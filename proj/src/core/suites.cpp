#include "gqm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gqm/kahler.hpp"
#include "gqm/operators.hpp"
#include "gqm/random.hpp"

namespace gqm {

namespace {

constexpr double kPi = std::numbers::pi;

std::string join(const std::vector<std::size_t>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

void require_scale(double tolerance_scale) {
  if (!(tolerance_scale > 0.0) || !std::isfinite(tolerance_scale))
    throw InvalidInput("tolerance scale must be a positive finite number");
}

void require_dims(const std::vector<std::size_t>& dims, std::size_t lo, std::size_t hi) {
  for (const auto d : dims)
    if (d < lo || d > hi) {
      std::ostringstream os;
      os << "dimension " << d << " outside " << lo << ".." << hi;
      throw InvalidInput(os.str());
    }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexVector unit(std::initializer_list<Complex> xs) { return ComplexVector(xs).normalized(); }

Ray plus_y() { return project(unit({1.0, Complex(0.0, 1.0)})); }

// The spin-1/2 oracle fixing the observable scale: at the +y ray, the
// statistical symplectic pairing of X_{sigma_z}, X_{sigma_x} is half of
// <-i[sigma_z, sigma_x]> = 2 <sigma_y> = 2, and the statistical metric
// norm of X_{sigma_z} is half of 2 (Delta sigma_z)^2 = 2.
void spin_half_factor_checks(Report& r, double ts) {
  const Ray y = plus_y();
  const auto sz = ops::pauli_z();
  const auto sx = ops::pauli_x();
  const auto Xz = hamiltonian_vector_field(sz, y);
  const auto Xx = hamiltonian_vector_field(sx, y);
  const std::string digest = Digest().add("spin-1/2 +y").add(y.rep()).hex();
  const double bracket_ratio =
      commutator_expectation(sz, sx, y.rep()) / symplectic_eval(KahlerScale::statistical(), Xz, Xx);
  const double metric_ratio = 2.0 * variance(sz, y.rep()) / metric_eval(KahlerScale::statistical(), Xz, Xz);
  r.add("spin_half_symplectic_factor", digest, std::abs(bracket_ratio - KahlerScale::observable().factor()),
        1e-12 * ts);
  r.add("spin_half_metric_factor", digest, std::abs(metric_ratio - KahlerScale::observable().factor()), 1e-12 * ts);
  r.add("spin_half_bracket_value", digest, std::abs(poisson_bracket(sz, sx, y) - 2.0), 1e-12 * ts);
  const auto audit = uncertainty_audit(sz, sx, y);
  r.add("spin_half_uncertainty_saturation", digest, std::abs(audit.slack), 1e-10 * ts);
}

}  // namespace

Report kahler_audit(const KahlerAuditOptions& options) {
  require_scale(options.tolerance_scale);
  require_dims(options.dims, 2, 8);
  const double ts = options.tolerance_scale;
  Report r;
  r.command = "kahler-audit";
  r.seed = options.seeds.empty() ? 0 : options.seeds.front();
  r.parameters = {{"dims", join(options.dims)}, {"trials", std::to_string(options.trials)},
                  {"tolerance_scale", format_real(ts)}};
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < options.seeds.size(); ++i) os << (i ? "," : "") << options.seeds[i];
    r.parameters.emplace_back("seeds", os.str());
  }
  if (options.trials == 0 || options.dims.empty() || options.seeds.empty()) return r;

  spin_half_factor_checks(r, ts);
  const auto stat = KahlerScale::statistical();
  const auto obs = KahlerScale::observable();

  for (const auto seed : options.seeds)
    for (const auto dim : options.dims) {
      Rng rng(mix(seed, dim));
      for (std::size_t trial = 0; trial < options.trials; ++trial) {
        const HermitianOperator F = rng.hermitian(dim);
        const HermitianOperator G = rng.hermitian(dim);
        const Ray x = rng.ray(dim);
        const double alpha = rng.uniform(-5.0, 5.0);
        const double c = rng.uniform(-3.0, 3.0);
        const std::string digest =
            Digest().add(seed).add(std::uint64_t{dim}).add(std::uint64_t{trial}).add(F).add(G).add(x.rep()).hex();
        const ComplexVector& psi = x.rep();

        const auto XF = hamiltonian_vector_field(F, x);
        const auto XG = hamiltonian_vector_field(G, x);
        const double pb = poisson_bracket(F, G, x);
        r.add("poisson_bracket_vs_commutator", digest, std::abs(pb - commutator_expectation(F, G, psi)), 1e-12 * ts);
        r.add("riemannian_product_vs_dispersion", digest,
              std::abs(riemannian_product(F, F, x) - 2.0 * variance(F, psi)), 1e-12 * ts);
        r.add("riemannian_product_vs_covariance", digest,
              std::abs(riemannian_product(F, G, x) - 2.0 * symmetrized_covariance(F, G, psi)), 1e-12 * ts);
        r.add("bracket_antisymmetry", digest, std::abs(pb + poisson_bracket(G, F, x)), 1e-12 * ts);
        r.add("bracket_linearity", digest, std::abs(poisson_bracket(F, G.scaled(c), x) - c * pb),
              1e-12 * (1.0 + std::abs(c)) * ts);

        const auto shifted = hamiltonian_vector_field(F.shifted(alpha), x);
        r.add("identity_kernel_shift", digest, (shifted.vec().amplitudes() - XF.vec().amplitudes()).norm(),
              1e-12 * (1.0 + std::abs(alpha)) * ts);
        r.add("identity_kernel_exact", digest,
              hamiltonian_vector_field(ops::identity(dim).scaled(alpha), x).vec().norm(), 0.0);

        r.add("horizontality", digest,
              std::max(std::abs(inner(psi, XF.vec())), std::abs(inner(psi, XG.vec()))), 1e-12 * ts);
        r.add("scale_coherence", digest,
              std::abs(metric_eval(obs, XF, XG) - 2.0 * metric_eval(stat, XF, XG)) +
                  std::abs(symplectic_eval(obs, XF, XG) - 2.0 * symplectic_eval(stat, XF, XG)),
              0.0);
        r.add("killing_isometry", digest, killing_residual(F, x, 1e-3, mix(seed, trial)), 1e-6 * ts);

        const auto audit = uncertainty_audit(F, G, x);
        r.add("uncertainty_slack", digest, std::max(0.0, -audit.slack), 1e-12 * ts);

        double stationary = 0.0;
        double value = 0.0;
        double dispersion = 0.0;
        for (const auto& e : eigen_extrema(F)) {
          stationary = std::max(stationary, hamiltonian_vector_field(F, e.ray).vec().norm());
          value = std::max(value, std::abs(expectation(F, e.ray.rep()) - e.value));
          dispersion = std::max(dispersion, riemannian_product(F, F, e.ray));
        }
        r.add("eigen_extrema_stationary", digest, stationary, 1e-10 * ts);
        r.add("eigen_extrema_value", digest, value, 1e-10 * ts);
        r.add("eigen_extrema_zero_dispersion", digest, dispersion, 1e-12 * ts);
      }
    }
  return r;
}

GeodesicVerifyResult geodesic_verify(const GeodesicVerifyOptions& options) {
  require_scale(options.tolerance_scale);
  require_dims(options.dims, 2, 8);
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw InvalidInput("dt must be positive");
  double ts = options.tolerance_scale;
  GeodesicVerifyResult out;
  Report& r = out.report;
  r.command = "geodesic-verify";
  r.seed = options.seed;
  r.parameters = {{"dims", join(options.dims)}, {"pairs", std::to_string(options.pairs)},
                  {"dt", format_real(options.dt)}, {"tolerance_scale", format_real(ts)}};
  double integration_widening = 1.0;
  if (options.dt > 0.1) {
    integration_widening = std::pow(options.dt / 0.1, 4);
    r.warnings.push_back("dt = " + format_real(options.dt) +
                         " exceeds 0.1; integration tolerances widened by (dt/0.1)^4 = " +
                         format_real(integration_widening));
    r.parameters.emplace_back("tolerance_widening", format_real(integration_widening));
  }
  if (options.pairs == 0) return out;

  for (const auto dim : options.dims) {
    Rng rng(mix(options.seed, dim));
    {
      const Ray a = rng.ray(dim);
      const Ray b = rng.ray(dim);
      const auto sphere = SpannedSphere::through(a, b);
      const std::string digest = Digest().add("area").add(a.rep()).add(b.rep()).hex();
      r.add("sphere_area_statistical", digest, std::abs(sphere_area(sphere).area - kPi), 1e-6 * ts);
      r.add("sphere_area_observable", digest,
            std::abs(sphere_area(sphere, KahlerScale::observable()).area - 2.0 * kPi), 2e-6 * ts);
    }
    for (std::size_t pair = 0; pair < options.pairs; ++pair) {
      const Ray a = rng.ray(dim);
      const Ray b = rng.ray(dim);
      const std::string digest =
          Digest().add(std::uint64_t{dim}).add(std::uint64_t{pair}).add(a.rep()).add(b.rep()).hex();
      const double overlap = transition_probability(a, b);
      const double d = fs_distance(a, b);
      r.add("closed_form_probability", digest, std::abs(std::cos(d) * std::cos(d) - overlap), 1e-12 * ts);

      auto cert = total_geodesy_certificate(a, b, dim, options.dt, mix(options.seed, pair));
      const double widen = ts * integration_widening;
      const double L = cert.integrated_length;
      r.add("geodesic_arrival", digest, cert.arrival_residual, 1e-8 * widen);
      r.add("geodesic_offslice", digest, cert.max_offslice_residual, 1e-6 * widen);
      r.add("geodesic_length", digest, cert.length_match, 1e-6 * widen);
      r.add("integrated_probability", digest, std::abs(std::cos(L) * std::cos(L) - overlap), 1e-8 * widen);
      if (!out.first_path) out.first_path = std::move(cert.path);
    }
  }
  return out;
}

TwoSlitConfig two_slit_config_from(const KeyValueConfig& config) {
  config.require_known({"wavelength", "distance", "slit_centers", "slit_width", "wall_min", "wall_max", "wall_points",
                        "screen_min", "screen_max", "screen_points", "beam", "waist", "fringe_window"});
  TwoSlitConfig c;
  c.wavelength = config.get_real("wavelength", c.wavelength);
  c.distance = config.get_real("distance", c.distance);
  c.slit_centers = config.get_reals("slit_centers", c.slit_centers);
  c.slit_width = config.get_real("slit_width", c.slit_width);
  c.wall = {config.get_real("wall_min", c.wall.min), config.get_real("wall_max", c.wall.max),
            config.get_count("wall_points", c.wall.points)};
  c.screen = {config.get_real("screen_min", c.screen.min), config.get_real("screen_max", c.screen.max),
              config.get_count("screen_points", c.screen.points)};
  c.beam = config.get_choice("beam", c.beam, {"plane", "gaussian"});
  c.waist = config.get_real("waist", c.waist);
  c.fringe_window = config.get_real("fringe_window", c.fringe_window);
  return c;
}

TwoSlitResult two_slit(const TwoSlitConfig& config, std::uint64_t seed, double tolerance_scale) {
  require_scale(tolerance_scale);
  const double ts = tolerance_scale;
  const SlitWall wall = build_wall(config.wall, config.slit_centers, config.slit_width);
  const ComplexVector psi = config.beam == "gaussian" ? gaussian_beam(config.wall, config.waist) : plane_wave(config.wall);

  TwoSlitResult out;
  Report& r = out.report;
  r.command = "two-slit";
  r.seed = seed;
  {
    std::ostringstream centers;
    for (std::size_t i = 0; i < config.slit_centers.size(); ++i)
      centers << (i ? "," : "") << format_real(config.slit_centers[i]);
    r.parameters = {{"wavelength", format_real(config.wavelength)},
                    {"distance", format_real(config.distance)},
                    {"slit_centers", centers.str()},
                    {"slit_width", format_real(config.slit_width)},
                    {"wall_grid", format_real(config.wall.min) + ".." + format_real(config.wall.max) + " x " +
                                      std::to_string(config.wall.points)},
                    {"screen_grid", format_real(config.screen.min) + ".." + format_real(config.screen.max) + " x " +
                                        std::to_string(config.screen.points)},
                    {"beam", config.beam},
                    {"tolerance_scale", format_real(ts)}};
  }

  out.pattern = propagate_to_screen(wall, psi, config.wavelength, config.distance, config.screen);
  const InterferencePattern& pat = out.pattern;
  if (!pat.paraxial_valid) r.warnings.push_back("geometry outside the paraxial regime; Fresnel kernel is approximate");
  const std::string digest = Digest()
                                 .add(config.wavelength)
                                 .add(config.distance)
                                 .add(config.slit_width)
                                 .add(config.wall.min)
                                 .add(config.wall.max)
                                 .add(std::uint64_t{config.wall.points})
                                 .add(psi)
                                 .hex();

  r.add("decomposition_identity", digest, decomposition_residual(pat), 1e-12 * ts);

  double peak = 0.0;
  double classical = 0.0;
  const auto incoherent = pat.incoherent_intensity();
  for (std::size_t x = 0; x < pat.total_intensity.size(); ++x) {
    peak = std::max(peak, pat.total_intensity[x]);
    classical = std::max(classical, std::abs(pat.total_intensity[x] - 2.0 * pat.cross_term[x] - incoherent[x]));
  }
  r.add("cross_term_removal", digest, peak > 0.0 ? classical / peak : classical, 1e-12 * ts);
  r.add("screen_probability_bound", digest, std::max(0.0, pat.screen_probability - 1.0), 1e-12 * ts);

  const auto wavelength = config.wavelength;
  const auto distance = config.distance;
  r.add("phase_invariance_zero", digest,
        phase_invariance_check(wall, psi, wavelength, distance, config.screen, 0.0), 0.0);
  r.add("phase_invariance", digest,
        phase_invariance_check(wall, psi, wavelength, distance, config.screen, kPi / 3.0), 1e-12 * ts);
  r.add("scale_invariance", digest, scale_invariance_check(wall, psi, wavelength, distance, config.screen, 2.0),
        1e-12 * ts);

  Rng rng(seed);
  const Ray random_ray = rng.ray(config.wall.points);
  const std::string random_digest = Digest().add(digest).add(random_ray.rep()).hex();
  r.add("phase_invariance_random_input", random_digest,
        phase_invariance_check(wall, random_ray.rep(), wavelength, distance, config.screen, kPi / 3.0), 1e-12 * ts);
  r.add("projector_poisson_bracket", random_digest, projector_poisson_check(wall, random_ray), 1e-12 * ts);

  if (wall.slit_count() == 1) {
    double cross = 0.0;
    for (const double c : pat.cross_term) cross = std::max(cross, std::abs(c));
    r.add("single_slit_cross_term", digest, cross, 0.0);
  } else if (wall.slit_count() == 2) {
    const double d = std::abs(config.slit_centers[1] - config.slit_centers[0]);
    const double expected = wavelength * distance / d;
    const auto fringes = measure_fringe_spacing(pat, config.fringe_window);
    r.parameters.emplace_back("fringe_maxima", std::to_string(fringes.maxima));
    r.parameters.emplace_back("fringe_spacing", format_real(fringes.spacing));
    r.parameters.emplace_back("fringe_expected", format_real(expected));
    r.add("fringe_spacing", digest, std::abs(fringes.spacing - expected), config.screen.spacing() * ts);
  }
  return out;
}

HermitianOperator parse_operator_spec(std::string_view spec) {
  if (!spec.empty() && spec.front() == '[') return operator_from_json(spec);
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  std::size_t n = 0;
  if (colon != std::string_view::npos) {
    const std::string count(spec.substr(colon + 1));
    try {
      std::size_t used = 0;
      const long long v = std::stoll(count, &used);
      if (used != count.size() || v < 1) throw InvalidInput("");
      n = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw InvalidInput("operator dimension must be a positive integer in `" + std::string(spec) + "`");
    }
  }
  if (name == "sigma_x" && n == 0) return ops::pauli_x();
  if (name == "sigma_y" && n == 0) return ops::pauli_y();
  if (name == "sigma_z" && n == 0) return ops::pauli_z();
  if (n > 0) {
    if (name == "identity") return ops::identity(n);
    if (name == "position") return ops::position(n);
    if (name == "momentum") return ops::momentum(n);
    if (name == "oscillator") {
      const Eigen::MatrixXcd a = ops::lowering(n);
      return HermitianOperator(a.adjoint() * a).shifted(0.5);
    }
  }
  throw InvalidInput("unknown operator spec `" + std::string(spec) + "`");
}

Ray parse_state_spec(std::string_view spec, std::size_t dim) {
  if (!spec.empty() && spec.front() == '[') {
    Ray r = project(vector_from_json(spec));
    require_same_dim(dim, r.dim());
    return r;
  }
  const Complex i(0.0, 1.0);
  const bool qubit_preset = spec == "up" || spec == "down" || spec == "plus" || spec == "minus" ||
                            spec == "plus_y" || spec == "minus_y";
  if (qubit_preset && dim != 2)
    throw InvalidInput("state `" + std::string(spec) + "` needs dimension 2, the Hamiltonian has " +
                       std::to_string(dim));
  if (spec == "up") return project(unit({1.0, 0.0}));
  if (spec == "down") return project(unit({0.0, 1.0}));
  if (spec == "plus") return project(unit({1.0, 1.0}));
  if (spec == "minus") return project(unit({1.0, -1.0}));
  if (spec == "plus_y") return project(unit({1.0, i}));
  if (spec == "minus_y") return project(unit({1.0, -i}));
  if (spec.substr(0, 6) == "level:") {
    const std::string k(spec.substr(6));
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(k, &used);
    } catch (const std::exception&) {
    }
    if (used != k.size() || v < 0 || static_cast<std::size_t>(v) >= dim)
      throw InvalidInput("level must be an integer in 0.." + std::to_string(dim - 1) + ", got `" + k + "`");
    return project(ComplexVector::basis(dim, static_cast<std::size_t>(v)));
  }
  throw InvalidInput("unknown state spec `" + std::string(spec) + "`");
}

EvolveResult evolve(const EvolveSpec& spec, double tolerance_scale) {
  require_scale(tolerance_scale);
  const double ts = tolerance_scale;
  const HermitianOperator& H = spec.hamiltonian;
  require_same_dim(H.dim(), spec.start.dim());

  std::vector<TrackedObservable> tracked = spec.tracked;
  if (tracked.empty()) {
    tracked.push_back({"energy", H});
    if (H.dim() == 2) {
      tracked.push_back({"sigma_x", ops::pauli_x()});
      tracked.push_back({"sigma_y", ops::pauli_y()});
      tracked.push_back({"sigma_z", ops::pauli_z()});
    }
  }

  EvolveResult out;
  out.trajectory = flow_integrate(H, spec.start, spec.t_end, spec.dt, tracked);
  Report& r = out.report;
  r.command = "evolve";
  r.parameters = {{"dim", std::to_string(H.dim())},
                  {"t_end", format_real(spec.t_end)},
                  {"dt", format_real(spec.dt)},
                  {"samples", std::to_string(out.trajectory.times.size())},
                  {"tolerance_scale", format_real(ts)}};
  const std::string digest = Digest().add(H).add(spec.start.rep()).add(spec.t_end).add(spec.dt).hex();

  r.add("flow_vs_exact", digest, flow_vs_exact_deviation(H, spec.start, spec.t_end, spec.dt), 1e-8 * ts);

  const double h0 = expectation(H, spec.start.rep());
  double drift = 0.0;
  double norm_defect = 0.0;
  for (const auto& p : out.trajectory.points) {
    drift = std::max(drift, std::abs(expectation(H, p.rep()) - h0));
    norm_defect = std::max(norm_defect, std::abs(p.rep().norm() - 1.0));
  }
  r.add("energy_conservation", digest, drift, 1e-10 * ts);
  r.add("trajectory_unit_norm", digest, norm_defect, 1e-12 * ts);

  for (const auto& t : tracked)
    r.add("ehrenfest_" + t.label, Digest().add(digest).add(t.op).hex(), ehrenfest_residual(t.op, H, spec.start, 1e-5),
          1e-8 * ts);
  return out;
}

EvolveResult demo_spin(double dt, double tolerance_scale) {
  const double t_end = kPi / 2.0;
  EvolveSpec spec{ops::pauli_z(), parse_state_spec("plus", 2), t_end, dt, {}};
  EvolveResult out = evolve(spec, tolerance_scale);
  out.report.command = "demo-spin";
  const double ts = tolerance_scale;
  const std::string digest = Digest().add("demo-spin").add(dt).hex();

  // exp(-i sigma_z t)(1,1)/sqrt2 = (e^{-it}, e^{it})/sqrt2: the Bloch vector
  // precesses as (cos 2t, sin 2t, 0).
  const Complex i(0.0, 1.0);
  const Ray closed = project(unit({std::exp(-i * t_end), std::exp(i * t_end)}));
  out.report.add("closed_form_final", digest, fs_distance(out.trajectory.points.back(), closed), 1e-8 * ts);
  double bloch = 0.0;
  for (std::size_t s = 0; s < out.trajectory.times.size(); ++s) {
    const double t = out.trajectory.times[s];
    const ComplexVector& psi = out.trajectory.points[s].rep();
    bloch = std::max({bloch, std::abs(expectation(ops::pauli_x(), psi) - std::cos(2.0 * t)),
                      std::abs(expectation(ops::pauli_y(), psi) - std::sin(2.0 * t)),
                      std::abs(expectation(ops::pauli_z(), psi))});
  }
  out.report.add("bloch_precession", digest, bloch, 1e-8 * ts);
  spin_half_factor_checks(out.report, ts);
  return out;
}

}  // namespace gqm
