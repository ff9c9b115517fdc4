#include "gqm/gqm.h"

#include <fstream>
#include <new>
#include <string>
#include <utility>

#include "gqm/kahler.hpp"
#include "gqm/suites.hpp"

struct gqm_vector {
  gqm::ComplexVector value;
};
struct gqm_operator {
  gqm::HermitianOperator value;
};
struct gqm_ray {
  gqm::Ray value;
};
struct gqm_report {
  gqm::Report value;
};
struct gqm_trajectory {
  gqm::Trajectory value;
};
struct gqm_pattern {
  gqm::InterferencePattern value;
};
struct gqm_path {
  gqm::GeodesicPath value;
};

namespace {

thread_local std::string last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

gqm_status fail(gqm_status status, const char* what) {
  last_error = what;
  return status;
}

template <class F>
gqm_status guarded(F&& body) {
  try {
    body();
    return GQM_OK;
  } catch (const gqm::DimensionMismatch& e) {
    return fail(GQM_ERR_DIMENSION, e.what());
  } catch (const gqm::DependentVectors& e) {
    return fail(GQM_ERR_DEPENDENT, e.what());
  } catch (const gqm::InvalidInput& e) {
    return fail(GQM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const gqm::NumericalError& e) {
    return fail(GQM_ERR_NUMERICAL, e.what());
  } catch (const IoError& e) {
    return fail(GQM_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GQM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GQM_ERR_INTERNAL, e.what());
  }
}

#define GQM_REQUIRE(ptr)                                           \
  do {                                                             \
    if ((ptr) == nullptr) return fail(GQM_ERR_NULL, #ptr " is NULL"); \
  } while (0)

Eigen::VectorXcd unpack(const double* interleaved, std::size_t n) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = {interleaved[2 * i], interleaved[2 * i + 1]};
  return v;
}

void pack(const gqm::ComplexVector& v, double* out) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

template <class Writer>
void write_file(const char* path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(std::string("cannot open `") + path + "` for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError(std::string("failed writing `") + path + "`");
}

std::vector<std::size_t> dims_of(const size_t* dims, size_t n) { return {dims, dims + n}; }

}  // namespace

extern "C" {

const char* gqm_version(void) { return gqm::kVersion; }

const char* gqm_last_error(void) { return last_error.c_str(); }

const char* gqm_status_name(gqm_status status) {
  switch (status) {
    case GQM_OK: return "ok";
    case GQM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GQM_ERR_DIMENSION: return "dimension mismatch";
    case GQM_ERR_DEPENDENT: return "dependent vectors";
    case GQM_ERR_NUMERICAL: return "numerical failure";
    case GQM_ERR_IO: return "i/o error";
    case GQM_ERR_NULL: return "null argument";
    case GQM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

gqm_status gqm_vector_create(const double* interleaved, size_t dim, gqm_vector** out) {
  GQM_REQUIRE(interleaved);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_vector{gqm::ComplexVector(unpack(interleaved, dim))}; });
}

gqm_status gqm_vector_from_json(const char* json, gqm_vector** out) {
  GQM_REQUIRE(json);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_vector{gqm::vector_from_json(json)}; });
}

size_t gqm_vector_dim(const gqm_vector* v) { return v ? v->value.dim() : 0; }

gqm_status gqm_vector_get(const gqm_vector* v, double* interleaved, size_t capacity_dim) {
  GQM_REQUIRE(v);
  GQM_REQUIRE(interleaved);
  if (capacity_dim < v->value.dim()) return fail(GQM_ERR_DIMENSION, "output buffer smaller than the vector");
  pack(v->value, interleaved);
  return GQM_OK;
}

void gqm_vector_destroy(gqm_vector* v) { delete v; }

gqm_status gqm_operator_create(const double* interleaved, size_t dim, gqm_operator** out) {
  GQM_REQUIRE(interleaved);
  GQM_REQUIRE(out);
  return guarded([&] {
    if (dim == 0) throw gqm::InvalidInput("operator dimension must be positive");
    const Eigen::VectorXcd flat = unpack(interleaved, dim * dim);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = flat(r * m.cols() + c);
    *out = new gqm_operator{gqm::HermitianOperator(m)};
  });
}

gqm_status gqm_operator_from_json(const char* json, gqm_operator** out) {
  GQM_REQUIRE(json);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_operator{gqm::operator_from_json(json)}; });
}

gqm_status gqm_operator_from_spec(const char* spec, gqm_operator** out) {
  GQM_REQUIRE(spec);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_operator{gqm::parse_operator_spec(spec)}; });
}

size_t gqm_operator_dim(const gqm_operator* op) { return op ? op->value.dim() : 0; }

void gqm_operator_destroy(gqm_operator* op) { delete op; }

gqm_status gqm_ray_from_vector(const gqm_vector* v, gqm_ray** out) {
  GQM_REQUIRE(v);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_ray{gqm::project(v->value)}; });
}

gqm_status gqm_ray_from_spec(const char* spec, size_t dim, gqm_ray** out) {
  GQM_REQUIRE(spec);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_ray{gqm::parse_state_spec(spec, dim)}; });
}

size_t gqm_ray_dim(const gqm_ray* r) { return r ? r->value.dim() : 0; }

gqm_status gqm_ray_representative(const gqm_ray* r, double* interleaved, size_t capacity_dim) {
  GQM_REQUIRE(r);
  GQM_REQUIRE(interleaved);
  if (capacity_dim < r->value.dim()) return fail(GQM_ERR_DIMENSION, "output buffer smaller than the ray");
  pack(r->value.rep(), interleaved);
  return GQM_OK;
}

void gqm_ray_destroy(gqm_ray* r) { delete r; }

gqm_status gqm_fs_distance(const gqm_ray* a, const gqm_ray* b, double* out) {
  GQM_REQUIRE(a);
  GQM_REQUIRE(b);
  GQM_REQUIRE(out);
  return guarded([&] { *out = gqm::fs_distance(a->value, b->value); });
}

gqm_status gqm_transition_probability(const gqm_ray* a, const gqm_ray* b, double* out) {
  GQM_REQUIRE(a);
  GQM_REQUIRE(b);
  GQM_REQUIRE(out);
  return guarded([&] { *out = gqm::transition_probability(a->value, b->value); });
}

gqm_status gqm_expectation(const gqm_operator* f, const gqm_ray* at, double* out) {
  GQM_REQUIRE(f);
  GQM_REQUIRE(at);
  GQM_REQUIRE(out);
  return guarded([&] { *out = gqm::expectation(f->value, at->value.rep()); });
}

gqm_status gqm_commutator_expectation(const gqm_operator* f, const gqm_operator* g, const gqm_ray* at,
                                      double* out) {
  GQM_REQUIRE(f);
  GQM_REQUIRE(g);
  GQM_REQUIRE(at);
  GQM_REQUIRE(out);
  return guarded([&] { *out = gqm::commutator_expectation(f->value, g->value, at->value.rep()); });
}

gqm_status gqm_poisson_bracket(const gqm_operator* f, const gqm_operator* g, const gqm_ray* at, double* out) {
  GQM_REQUIRE(f);
  GQM_REQUIRE(g);
  GQM_REQUIRE(at);
  GQM_REQUIRE(out);
  return guarded([&] { *out = gqm::poisson_bracket(f->value, g->value, at->value); });
}

gqm_status gqm_riemannian_product(const gqm_operator* f, const gqm_operator* g, const gqm_ray* at, double* out) {
  GQM_REQUIRE(f);
  GQM_REQUIRE(g);
  GQM_REQUIRE(at);
  GQM_REQUIRE(out);
  return guarded([&] { *out = gqm::riemannian_product(f->value, g->value, at->value); });
}

gqm_status gqm_uncertainty_audit(const gqm_operator* f, const gqm_operator* m, const gqm_ray* at, double out[4]) {
  GQM_REQUIRE(f);
  GQM_REQUIRE(m);
  GQM_REQUIRE(at);
  GQM_REQUIRE(out);
  return guarded([&] {
    const auto a = gqm::uncertainty_audit(f->value, m->value, at->value);
    out[0] = a.lhs;
    out[1] = a.symplectic_term;
    out[2] = a.metric_term;
    out[3] = a.slack;
  });
}

gqm_status gqm_evolve_exact(const gqm_operator* h, const gqm_ray* start, double t, gqm_ray** out) {
  GQM_REQUIRE(h);
  GQM_REQUIRE(start);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_ray{gqm::project(gqm::evolve_exact(h->value, start->value.rep(), t))}; });
}

gqm_status gqm_sphere_area(const gqm_ray* a, const gqm_ray* b, double out[2]) {
  GQM_REQUIRE(a);
  GQM_REQUIRE(b);
  GQM_REQUIRE(out);
  return guarded([&] {
    const auto est = gqm::sphere_area(gqm::SpannedSphere::through(a->value, b->value));
    out[0] = est.area;
    out[1] = est.error_estimate;
  });
}

gqm_status gqm_geodesy_certificate(const gqm_ray* a, const gqm_ray* b, double dt, uint64_t seed, double out[4]) {
  GQM_REQUIRE(a);
  GQM_REQUIRE(b);
  GQM_REQUIRE(out);
  return guarded([&] {
    const auto c = gqm::total_geodesy_certificate(a->value, b->value, a->value.dim(), dt, seed);
    out[0] = c.max_offslice_residual;
    out[1] = c.length_match;
    out[2] = c.arrival_residual;
    out[3] = c.converged ? 1.0 : 0.0;
  });
}

gqm_status gqm_flow_integrate(const gqm_operator* h, const gqm_ray* start, double t_end, double dt,
                              gqm_trajectory** out) {
  GQM_REQUIRE(h);
  GQM_REQUIRE(start);
  GQM_REQUIRE(out);
  return guarded([&] { *out = new gqm_trajectory{gqm::flow_integrate(h->value, start->value, t_end, dt)}; });
}

size_t gqm_trajectory_samples(const gqm_trajectory* t) { return t ? t->value.times.size() : 0; }

gqm_status gqm_trajectory_point(const gqm_trajectory* t, size_t index, double* time, gqm_ray** point) {
  GQM_REQUIRE(t);
  if (index >= t->value.times.size()) return fail(GQM_ERR_INVALID_ARGUMENT, "sample index out of range");
  if (time) *time = t->value.times[index];
  if (point) return guarded([&] { *point = new gqm_ray{t->value.points[index]}; });
  return GQM_OK;
}

gqm_status gqm_trajectory_write_csv(const gqm_trajectory* t, const char* path) {
  GQM_REQUIRE(t);
  GQM_REQUIRE(path);
  return guarded([&] { write_file(path, [&](std::ostream& os) { gqm::write_trajectory_csv(os, t->value); }); });
}

void gqm_trajectory_destroy(gqm_trajectory* t) { delete t; }

gqm_status gqm_run_kahler_audit(const size_t* dims, size_t n_dims, const uint64_t* seeds, size_t n_seeds,
                                size_t trials, double tolerance_scale, gqm_report** out) {
  GQM_REQUIRE(out);
  if (n_dims > 0) GQM_REQUIRE(dims);
  if (n_seeds > 0) GQM_REQUIRE(seeds);
  return guarded([&] {
    gqm::KahlerAuditOptions o;
    o.dims = dims_of(dims, n_dims);
    o.seeds.assign(seeds, seeds + n_seeds);
    o.trials = trials;
    o.tolerance_scale = tolerance_scale;
    *out = new gqm_report{gqm::kahler_audit(o)};
  });
}

gqm_status gqm_run_geodesic_verify(const size_t* dims, size_t n_dims, size_t pairs, double dt, uint64_t seed,
                                   double tolerance_scale, gqm_report** out, gqm_path** path_out) {
  GQM_REQUIRE(out);
  if (n_dims > 0) GQM_REQUIRE(dims);
  return guarded([&] {
    gqm::GeodesicVerifyOptions o;
    o.dims = dims_of(dims, n_dims);
    o.pairs = pairs;
    o.dt = dt;
    o.seed = seed;
    o.tolerance_scale = tolerance_scale;
    auto result = gqm::geodesic_verify(o);
    if (path_out) *path_out = result.first_path ? new gqm_path{std::move(*result.first_path)} : nullptr;
    *out = new gqm_report{std::move(result.report)};
  });
}

gqm_status gqm_run_two_slit(const char* config_path, uint64_t seed, double tolerance_scale, gqm_report** out,
                            gqm_pattern** pattern_out) {
  GQM_REQUIRE(out);
  return guarded([&] {
    gqm::TwoSlitConfig config;
    if (config_path) {
      std::ifstream in(config_path);
      if (!in) throw IoError(std::string("cannot read config `") + config_path + "`");
      config = gqm::two_slit_config_from(gqm::KeyValueConfig::parse(in, config_path));
    }
    auto result = gqm::two_slit(config, seed, tolerance_scale);
    if (pattern_out) *pattern_out = new gqm_pattern{std::move(result.pattern)};
    *out = new gqm_report{std::move(result.report)};
  });
}

gqm_status gqm_run_evolve(const char* hamiltonian_spec, const char* start_spec, double t_end, double dt,
                          double tolerance_scale, gqm_report** out, gqm_trajectory** trajectory_out) {
  GQM_REQUIRE(hamiltonian_spec);
  GQM_REQUIRE(start_spec);
  GQM_REQUIRE(out);
  return guarded([&] {
    const gqm::HermitianOperator H = gqm::parse_operator_spec(hamiltonian_spec);
    gqm::EvolveSpec spec{H, gqm::parse_state_spec(start_spec, H.dim()), t_end, dt, {}};
    auto result = gqm::evolve(spec, tolerance_scale);
    if (trajectory_out) *trajectory_out = new gqm_trajectory{std::move(result.trajectory)};
    *out = new gqm_report{std::move(result.report)};
  });
}

gqm_status gqm_run_demo_spin(double dt, double tolerance_scale, gqm_report** out, gqm_trajectory** trajectory_out) {
  GQM_REQUIRE(out);
  return guarded([&] {
    auto result = gqm::demo_spin(dt, tolerance_scale);
    if (trajectory_out) *trajectory_out = new gqm_trajectory{std::move(result.trajectory)};
    *out = new gqm_report{std::move(result.report)};
  });
}

size_t gqm_report_entry_count(const gqm_report* r) { return r ? r->value.entries.size() : 0; }

size_t gqm_report_failure_count(const gqm_report* r) { return r ? r->value.failures() : 0; }

size_t gqm_report_warning_count(const gqm_report* r) { return r ? r->value.warnings.size() : 0; }

const char* gqm_report_warning(const gqm_report* r, size_t index) {
  if (!r || index >= r->value.warnings.size()) return nullptr;
  return r->value.warnings[index].c_str();
}

gqm_status gqm_report_entry(const gqm_report* r, size_t index, const char** check_name, double* residual,
                            double* tolerance, int* pass) {
  GQM_REQUIRE(r);
  if (index >= r->value.entries.size()) return fail(GQM_ERR_INVALID_ARGUMENT, "entry index out of range");
  const auto& e = r->value.entries[index];
  if (check_name) *check_name = e.check_name.c_str();
  if (residual) *residual = e.residual;
  if (tolerance) *tolerance = e.tolerance;
  if (pass) *pass = e.pass ? 1 : 0;
  return GQM_OK;
}

gqm_status gqm_report_set_seed(gqm_report* r, uint64_t seed) {
  GQM_REQUIRE(r);
  r->value.seed = seed;
  return GQM_OK;
}

gqm_status gqm_report_write_json(const gqm_report* r, const char* path) {
  GQM_REQUIRE(r);
  GQM_REQUIRE(path);
  return guarded([&] { write_file(path, [&](std::ostream& os) { os << r->value.to_json(); }); });
}

void gqm_report_destroy(gqm_report* r) { delete r; }

size_t gqm_pattern_points(const gqm_pattern* p) { return p ? p->value.screen_positions.size() : 0; }

gqm_status gqm_pattern_write_csv(const gqm_pattern* p, const char* path) {
  GQM_REQUIRE(p);
  GQM_REQUIRE(path);
  return guarded([&] { write_file(path, [&](std::ostream& os) { gqm::write_pattern_csv(os, p->value); }); });
}

void gqm_pattern_destroy(gqm_pattern* p) { delete p; }

gqm_status gqm_path_write_csv(const gqm_path* p, const char* path) {
  GQM_REQUIRE(p);
  GQM_REQUIRE(path);
  return guarded([&] { write_file(path, [&](std::ostream& os) { gqm::write_geodesic_csv(os, p->value); }); });
}

void gqm_path_destroy(gqm_path* p) { delete p; }

}  // extern "C"
