// Exercises the shared library through its C header only.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gqm/gqm.h"

namespace {

const double kPi = 3.14159265358979323846;

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gqm_capi_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

gqm_ray* spec_ray(const char* spec, size_t dim) {
  gqm_ray* r = nullptr;
  REQUIRE(gqm_ray_from_spec(spec, dim, &r) == GQM_OK);
  return r;
}

gqm_operator* spec_op(const char* spec) {
  gqm_operator* op = nullptr;
  REQUIRE(gqm_operator_from_spec(spec, &op) == GQM_OK);
  return op;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(gqm_version()) == "0.1.0");
  CHECK(std::string(gqm_status_name(GQM_OK)) == "ok");
  CHECK(std::string(gqm_status_name(GQM_ERR_DIMENSION)) != std::string(gqm_status_name(GQM_ERR_NULL)));
}

TEST_CASE("vectors round trip") {
  const double data[] = {1.0, 2.0, -0.5, 0.25};
  gqm_vector* v = nullptr;
  REQUIRE(gqm_vector_create(data, 2, &v) == GQM_OK);
  CHECK(gqm_vector_dim(v) == 2);
  double back[4] = {};
  CHECK(gqm_vector_get(v, back, 2) == GQM_OK);
  for (int i = 0; i < 4; ++i) CHECK(back[i] == data[i]);
  CHECK(gqm_vector_get(v, back, 1) == GQM_ERR_DIMENSION);
  gqm_vector_destroy(v);

  REQUIRE(gqm_vector_from_json("[[0, 1], 3]", &v) == GQM_OK);
  CHECK(gqm_vector_dim(v) == 2);
  gqm_vector_destroy(v);
  CHECK(gqm_vector_from_json("[1,", &v) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gqm_last_error()).find("JSON") != std::string::npos);
  gqm_vector_destroy(nullptr);
}

TEST_CASE("null arguments are rejected") {
  gqm_vector* v = nullptr;
  CHECK(gqm_vector_create(nullptr, 2, &v) == GQM_ERR_NULL);
  const double d[] = {1.0, 0.0};
  CHECK(gqm_vector_create(d, 1, nullptr) == GQM_ERR_NULL);
  double out = 0.0;
  CHECK(gqm_fs_distance(nullptr, nullptr, &out) == GQM_ERR_NULL);
  CHECK(gqm_run_evolve(nullptr, "plus", 1.0, 1e-3, 1.0, nullptr, nullptr) == GQM_ERR_NULL);
  CHECK(std::string(gqm_last_error()).size() > 0);
  CHECK(gqm_vector_dim(nullptr) == 0);
}

TEST_CASE("operators") {
  const double bad[] = {1, 0, 0, 1, 1, 0, 0, 0};  // [[1, i], [1, 0]]
  gqm_operator* op = nullptr;
  CHECK(gqm_operator_create(bad, 2, &op) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gqm_last_error()).find("Hermitian") != std::string::npos);
  const double sy[] = {0, 0, 0, -1, 0, 1, 0, 0};
  REQUIRE(gqm_operator_create(sy, 2, &op) == GQM_OK);
  CHECK(gqm_operator_dim(op) == 2);
  gqm_ray* y = spec_ray("plus_y", 2);
  double e = 0.0;
  CHECK(gqm_expectation(op, y, &e) == GQM_OK);
  CHECK(std::abs(e - 1.0) < 1e-15);
  gqm_operator_destroy(op);
  gqm_ray_destroy(y);
  CHECK(gqm_operator_from_spec("sigma_w", &op) == GQM_ERR_INVALID_ARGUMENT);
  REQUIRE(gqm_operator_from_json("[[0, 1], [1, 0]]", &op) == GQM_OK);
  gqm_operator_destroy(op);
}

TEST_CASE("geometry through the C interface") {
  gqm_ray* up = spec_ray("up", 2);
  gqm_ray* plus = spec_ray("plus", 2);
  gqm_ray* y = spec_ray("plus_y", 2);
  double d = 0.0, p = 0.0;
  CHECK(gqm_fs_distance(up, plus, &d) == GQM_OK);
  CHECK(std::abs(d - kPi / 4) < 1e-15);
  CHECK(gqm_transition_probability(up, plus, &p) == GQM_OK);
  CHECK(std::abs(p - 0.5) < 1e-15);

  gqm_operator* sz = spec_op("sigma_z");
  gqm_operator* sx = spec_op("sigma_x");
  double pb = 0.0, rp = 0.0, ce = 0.0;
  CHECK(gqm_poisson_bracket(sz, sx, y, &pb) == GQM_OK);
  CHECK(gqm_commutator_expectation(sz, sx, y, &ce) == GQM_OK);
  CHECK(std::abs(pb - 2.0) < 1e-15);
  CHECK(std::abs(pb - ce) < 1e-15);
  CHECK(gqm_riemannian_product(sz, sz, plus, &rp) == GQM_OK);
  CHECK(std::abs(rp - 2.0) < 1e-15);
  double audit[4] = {};
  CHECK(gqm_uncertainty_audit(sz, sx, y, audit) == GQM_OK);
  CHECK(std::abs(audit[3]) < 1e-10);

  gqm_ray* moved = nullptr;
  CHECK(gqm_evolve_exact(sz, plus, kPi / 4, &moved) == GQM_OK);
  CHECK(gqm_fs_distance(moved, y, &d) == GQM_OK);
  CHECK(d < 1e-12);
  double rep[4] = {};
  CHECK(gqm_ray_representative(moved, rep, 2) == GQM_OK);
  CHECK(std::abs(rep[0] * rep[0] + rep[1] * rep[1] + rep[2] * rep[2] + rep[3] * rep[3] - 1.0) < 1e-15);

  double area[2] = {};
  CHECK(gqm_sphere_area(up, plus, area) == GQM_OK);
  CHECK(std::abs(area[0] - kPi) < 1e-6);
  CHECK(gqm_sphere_area(up, up, area) == GQM_ERR_DEPENDENT);

  gqm_ray* three = spec_ray("level:1", 3);
  CHECK(gqm_fs_distance(up, three, &d) == GQM_ERR_DIMENSION);
  CHECK(gqm_poisson_bracket(sz, sx, three, &pb) == GQM_ERR_DIMENSION);
  gqm_ray* a = spec_ray("[1, 0.5, [0, 0.3]]", 3);
  double cert[4] = {};
  CHECK(gqm_geodesy_certificate(a, three, 5e-3, 7, cert) == GQM_OK);
  CHECK(cert[0] < 1e-6);
  CHECK(cert[1] < 1e-6);
  CHECK(cert[3] == 1.0);

  for (gqm_ray* r : {up, plus, y, moved, three, a}) gqm_ray_destroy(r);
  gqm_operator_destroy(sz);
  gqm_operator_destroy(sx);
}

TEST_CASE("ray specs check the dimension") {
  gqm_ray* r = nullptr;
  CHECK(gqm_ray_from_spec("up", 3, &r) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(gqm_ray_from_spec("[1, 0]", 3, &r) == GQM_ERR_DIMENSION);
  CHECK(gqm_ray_from_spec("level:3", 3, &r) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
}

TEST_CASE("trajectories") {
  gqm_operator* sz = spec_op("sigma_z");
  gqm_ray* plus = spec_ray("plus", 2);
  gqm_trajectory* t = nullptr;
  REQUIRE(gqm_flow_integrate(sz, plus, 0.5, 0.1, &t) == GQM_OK);
  CHECK(gqm_trajectory_samples(t) == 6);
  double time = 0.0;
  gqm_ray* last = nullptr;
  CHECK(gqm_trajectory_point(t, 5, &time, &last) == GQM_OK);
  CHECK(std::abs(time - 0.5) < 1e-15);
  CHECK(gqm_trajectory_point(t, 6, &time, &last) == GQM_ERR_INVALID_ARGUMENT);
  const auto path = scratch("flow.csv");
  CHECK(gqm_trajectory_write_csv(t, path.c_str()) == GQM_OK);
  CHECK(slurp(path).rfind("time,re_0,im_0,re_1,im_1", 0) == 0);
  CHECK(gqm_trajectory_write_csv(t, "/proc/gqm-no-such-dir/flow.csv") == GQM_ERR_IO);
  CHECK(gqm_flow_integrate(sz, plus, 1.0, 0.0, &t) == GQM_ERR_INVALID_ARGUMENT);
  gqm_ray_destroy(last);
  gqm_trajectory_destroy(t);
  gqm_ray_destroy(plus);
  gqm_operator_destroy(sz);
}

TEST_CASE("suite runners") {
  const size_t dims[] = {2, 3};
  const uint64_t seeds[] = {5};
  gqm_report* r = nullptr;
  REQUIRE(gqm_run_kahler_audit(dims, 2, seeds, 1, 3, 1.0, &r) == GQM_OK);
  CHECK(gqm_report_entry_count(r) > 0);
  CHECK(gqm_report_failure_count(r) == 0);
  const char* name = nullptr;
  double residual = 0.0, tolerance = 0.0;
  int pass = 0;
  CHECK(gqm_report_entry(r, 0, &name, &residual, &tolerance, &pass) == GQM_OK);
  CHECK(name != nullptr);
  CHECK(pass == 1);
  CHECK(gqm_report_entry(r, gqm_report_entry_count(r), &name, &residual, &tolerance, &pass) ==
        GQM_ERR_INVALID_ARGUMENT);
  CHECK(gqm_report_set_seed(r, 5) == GQM_OK);
  const auto json = scratch("audit.json");
  CHECK(gqm_report_write_json(r, json.c_str()) == GQM_OK);
  CHECK(slurp(json).find("\"command\": \"kahler-audit\"") != std::string::npos);
  gqm_report_destroy(r);

  const size_t bad_dims[] = {1};
  CHECK(gqm_run_kahler_audit(bad_dims, 1, seeds, 1, 3, 1.0, &r) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(gqm_run_kahler_audit(dims, 2, seeds, 1, 3, 0.0, &r) == GQM_ERR_INVALID_ARGUMENT);

  gqm_path* path = nullptr;
  const size_t geo_dims[] = {3};
  REQUIRE(gqm_run_geodesic_verify(geo_dims, 1, 1, 5e-3, 9, 1.0, &r, &path) == GQM_OK);
  CHECK(gqm_report_failure_count(r) == 0);
  REQUIRE(path != nullptr);
  const auto csv = scratch("path.csv");
  CHECK(gqm_path_write_csv(path, csv.c_str()) == GQM_OK);
  CHECK(slurp(csv).rfind("arclength,base_index,u_1,v_1,u_2,v_2", 0) == 0);
  gqm_path_destroy(path);
  gqm_report_destroy(r);

  REQUIRE(gqm_run_geodesic_verify(geo_dims, 1, 1, 0.2, 9, 1.0, &r, nullptr) == GQM_OK);
  REQUIRE(gqm_report_warning_count(r) == 1);
  CHECK(std::string(gqm_report_warning(r, 0)).find("exceeds 0.1") != std::string::npos);
  CHECK(gqm_report_warning(r, 1) == nullptr);
  gqm_report_destroy(r);

  gqm_pattern* pattern = nullptr;
  REQUIRE(gqm_run_two_slit(nullptr, 1, 1.0, &r, &pattern) == GQM_OK);
  CHECK(gqm_report_failure_count(r) == 0);
  CHECK(gqm_pattern_points(pattern) == 2048);
  gqm_pattern_destroy(pattern);
  gqm_report_destroy(r);

  const auto cfg = scratch("bad.cfg");
  std::ofstream(cfg) << "wavelength = 5e-7\nbeam laser\n";
  CHECK(gqm_run_two_slit(cfg.c_str(), 1, 1.0, &r, &pattern) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gqm_last_error()).find("bad.cfg:2:") != std::string::npos);
  CHECK(gqm_run_two_slit(scratch("missing.cfg").c_str(), 1, 1.0, &r, &pattern) == GQM_ERR_IO);

  gqm_trajectory* t = nullptr;
  REQUIRE(gqm_run_evolve("sigma_x", "up", 1.0, 1e-3, 1.0, &r, &t) == GQM_OK);
  CHECK(gqm_report_failure_count(r) == 0);
  gqm_trajectory_destroy(t);
  gqm_report_destroy(r);
  CHECK(gqm_run_evolve("[[1, [0, 1]], [1, 0]]", "plus", 1.0, 1e-3, 1.0, &r, &t) == GQM_ERR_INVALID_ARGUMENT);
  CHECK(gqm_run_evolve("sigma_x", "level:0", 1.0, 1e-3, 1.0, &r, &t) == GQM_OK);
  gqm_trajectory_destroy(t);
  gqm_report_destroy(r);

  REQUIRE(gqm_run_demo_spin(1e-3, 1.0, &r, &t) == GQM_OK);
  CHECK(gqm_report_failure_count(r) == 0);
  CHECK(gqm_trajectory_samples(t) > 1);
  gqm_trajectory_destroy(t);
  gqm_report_destroy(r);
}
