// gqm: runs the verification suites and demo experiments and writes their
// JSON reports and CSV data to an output directory.
//
// Exit status: 0 when every check passes, 1 when a check fails (including a
// computation that does not converge), 2 for usage, input or I/O errors.

#include <filesystem>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "gqm/gqm.h"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsageError = 2;

struct Common {
  std::uint64_t seed = 0x5eed;
  std::string out = ".";
  double tolerance_scale = 1.0;
};

// Thrown for errors reported by the library; carries its message.
struct LibraryError {
  gqm_status status;
  std::string message;
};

void check(gqm_status s) {
  if (s != GQM_OK) throw LibraryError{s, gqm_last_error()};
}

std::string output_path(const Common& c, const std::string& name) {
  return (std::filesystem::path(c.out) / name).string();
}

int finish(gqm_report* report, const Common& c, const std::string& command, const std::string& json_name) {
  check(gqm_report_set_seed(report, c.seed));
  const std::string path = output_path(c, json_name);
  const gqm_status s = gqm_report_write_json(report, path.c_str());
  if (s != GQM_OK) {
    gqm_report_destroy(report);
    throw LibraryError{s, gqm_last_error()};
  }
  for (size_t i = 0; i < gqm_report_warning_count(report); ++i)
    std::cerr << "warning: " << gqm_report_warning(report, i) << '\n';
  const size_t checks = gqm_report_entry_count(report);
  const size_t failures = gqm_report_failure_count(report);
  for (size_t i = 0; i < checks; ++i) {
    const char* name = nullptr;
    double residual = 0.0;
    double tolerance = 0.0;
    int pass = 0;
    check(gqm_report_entry(report, i, &name, &residual, &tolerance, &pass));
    if (!pass) std::cerr << "FAIL " << name << ": residual " << residual << " > tolerance " << tolerance << '\n';
  }
  std::cout << command << ": " << checks << " checks, " << failures << " failed -> " << path << '\n';
  gqm_report_destroy(report);
  return failures == 0 ? kPass : kCheckFailure;
}

int run_kahler_audit(const Common& c, const std::vector<size_t>& dims, std::vector<std::uint64_t> seeds,
                     size_t trials) {
  if (seeds.empty()) seeds.push_back(c.seed);
  gqm_report* report = nullptr;
  check(gqm_run_kahler_audit(dims.data(), dims.size(), seeds.data(), seeds.size(), trials, c.tolerance_scale,
                             &report));
  return finish(report, c, "kahler-audit", "kahler_audit.json");
}

int run_geodesic_verify(const Common& c, const std::vector<size_t>& dims, size_t pairs, double dt) {
  gqm_report* report = nullptr;
  gqm_path* path = nullptr;
  check(gqm_run_geodesic_verify(dims.data(), dims.size(), pairs, dt, c.seed, c.tolerance_scale, &report, &path));
  if (path) {
    const std::string csv = output_path(c, "geodesic_path.csv");
    const gqm_status s = gqm_path_write_csv(path, csv.c_str());
    gqm_path_destroy(path);
    if (s != GQM_OK) {
      gqm_report_destroy(report);
      throw LibraryError{s, gqm_last_error()};
    }
  }
  return finish(report, c, "geodesic-verify", "geodesic_verify.json");
}

int run_two_slit(const Common& c, const std::string& config) {
  gqm_report* report = nullptr;
  gqm_pattern* pattern = nullptr;
  check(gqm_run_two_slit(config.empty() ? nullptr : config.c_str(), c.seed, c.tolerance_scale, &report, &pattern));
  const std::string csv = output_path(c, "two_slit_pattern.csv");
  const gqm_status s = gqm_pattern_write_csv(pattern, csv.c_str());
  gqm_pattern_destroy(pattern);
  if (s != GQM_OK) {
    gqm_report_destroy(report);
    throw LibraryError{s, gqm_last_error()};
  }
  return finish(report, c, "two-slit", "two_slit.json");
}

int write_trajectory_and_finish(gqm_report* report, gqm_trajectory* trajectory, const Common& c,
                                const std::string& command, const std::string& stem) {
  const std::string csv = output_path(c, stem + "_trajectory.csv");
  const gqm_status s = gqm_trajectory_write_csv(trajectory, csv.c_str());
  gqm_trajectory_destroy(trajectory);
  if (s != GQM_OK) {
    gqm_report_destroy(report);
    throw LibraryError{s, gqm_last_error()};
  }
  return finish(report, c, command, stem + ".json");
}

int run_evolve(const Common& c, const std::string& h, const std::string& start, double t_end, double dt) {
  gqm_report* report = nullptr;
  gqm_trajectory* trajectory = nullptr;
  check(gqm_run_evolve(h.c_str(), start.c_str(), t_end, dt, c.tolerance_scale, &report, &trajectory));
  return write_trajectory_and_finish(report, trajectory, c, "evolve", "evolve");
}

int run_demo_spin(const Common& c, double dt) {
  gqm_report* report = nullptr;
  gqm_trajectory* trajectory = nullptr;
  check(gqm_run_demo_spin(dt, c.tolerance_scale, &report, &trajectory));
  return write_trajectory_and_finish(report, trajectory, c, "demo-spin", "demo_spin");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric quantum mechanics: verification suites and demo experiments"};
  app.set_version_flag("--version", std::string(gqm_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Seed for all random inputs")->capture_default_str();
  app.add_option("--out", common.out, "Directory for reports and CSV files")->capture_default_str();
  app.add_option("--tolerance-scale", common.tolerance_scale, "Multiplier applied to every tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::vector<size_t> audit_dims{2, 3, 4, 5, 6, 7, 8};
  std::vector<std::uint64_t> audit_seeds;
  size_t trials = 100;
  auto* audit = app.add_subcommand("kahler-audit", "Bracket, metric and uncertainty identities on random inputs");
  audit->add_option("--dims", audit_dims, "Hilbert-space dimensions (2..8)")->capture_default_str()->delimiter(',');
  audit->add_option("--seeds", audit_seeds, "Seeds to sweep (default: --seed)")->delimiter(',');
  audit->add_option("--trials", trials, "Random trials per (seed, dimension)")->capture_default_str();

  std::vector<size_t> geo_dims{2, 3, 4};
  size_t pairs = 20;
  double geo_dt = 5e-3;
  auto* geo = app.add_subcommand("geodesic-verify", "Sphere areas and totally-geodesic certificates");
  geo->add_option("--dims", geo_dims, "Ambient dimensions (2..8)")->capture_default_str()->delimiter(',');
  geo->add_option("--pairs", pairs, "Random ray pairs per dimension")->capture_default_str();
  geo->add_option("--dt", geo_dt, "Geodesic integration step")->capture_default_str();

  std::string config;
  auto* slit = app.add_subcommand("two-slit", "Two-slit pattern from slit projectors");
  slit->add_option("--config", config, "Key-value configuration file (default geometry if omitted)")
      ->check(CLI::ExistingFile);

  std::string hamiltonian;
  std::string start;
  double t_end = 1.0;
  double evolve_dt = 1e-3;
  auto* ev = app.add_subcommand("evolve", "Hamiltonian flow against exact evolution");
  ev->add_option("--hamiltonian", hamiltonian,
                 "JSON matrix or sigma_x|sigma_y|sigma_z|identity:N|oscillator:N|position:N|momentum:N")
      ->required();
  ev->add_option("--start", start, "JSON vector or up|down|plus|minus|plus_y|minus_y|level:K")->required();
  ev->add_option("--t-end", t_end, "Final time")->capture_default_str();
  ev->add_option("--dt", evolve_dt, "Integration step")->capture_default_str();

  double spin_dt = 1e-3;
  auto* spin = app.add_subcommand("demo-spin", "Spin-1/2 precession under sigma_z");
  spin->add_option("--dt", spin_dt, "Integration step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  std::error_code ec;
  std::filesystem::create_directories(common.out, ec);
  if (ec || !std::filesystem::is_directory(common.out)) {
    std::cerr << "error: cannot use output directory `" << common.out << "`"
              << (ec ? ": " + ec.message() : std::string()) << '\n';
    return kUsageError;
  }

  try {
    if (*audit) return run_kahler_audit(common, audit_dims, audit_seeds, trials);
    if (*geo) return run_geodesic_verify(common, geo_dims, pairs, geo_dt);
    if (*slit) return run_two_slit(common, config);
    if (*ev) return run_evolve(common, hamiltonian, start, t_end, evolve_dt);
    if (*spin) return run_demo_spin(common, spin_dt);
  } catch (const LibraryError& e) {
    std::cerr << "error (" << gqm_status_name(e.status) << "): " << e.message << '\n';
    return e.status == GQM_ERR_INTERNAL || e.status == GQM_ERR_NUMERICAL ? kCheckFailure : kUsageError;
  }
  return kUsageError;
}
