#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gqm/operators.hpp"
#include "gqm/report.hpp"
#include "gqm/serialize.hpp"
#include "oracles.hpp"

using namespace gqm;
using oracle::Gen;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("reals round trip through their text form") {
  Gen gen(71);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = gen.normal(gen.engine) * std::pow(10.0, gen.uniform(-300, 300));
    CHECK(std::stod(format_real(x)) == x);
  }
  CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("vectors and operators round trip through JSON") {
  Gen gen(72);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = gen.index(1, 8);
    const ComplexVector v(gen.vector(n));
    CHECK((vector_from_json(vector_to_json(v)).amplitudes() - v.amplitudes()).norm() == 0.0);
    const HermitianOperator op(gen.hermitian(n));
    CHECK((operator_from_json(operator_to_json(op)).entries() - op.entries()).norm() == 0.0);
  }
  const auto j = nlohmann::json::parse(vector_to_json(ComplexVector{Complex(1.0, -2.0), 0.5}));
  CHECK(j == nlohmann::json::parse("[[1,-2],[0.5,0]]"));
}

TEST_CASE("JSON input forms and errors") {
  const auto v = vector_from_json("[1, [0, 1], 2.5]");
  CHECK(v[0] == Complex(1.0));
  CHECK(v[1] == Complex(0.0, 1.0));
  CHECK(v[2] == Complex(2.5));
  const auto sy = operator_from_json("[[0, [0, -1]], [[0, 1], 0]]");
  CHECK((sy.entries() - ops::pauli_y().entries()).norm() == 0.0);

  CHECK_THROWS_AS(vector_from_json("[]"), InvalidInput);
  CHECK_THROWS_AS(vector_from_json("[1, "), InvalidInput);
  CHECK_THROWS_AS(vector_from_json("[[1, 2, 3]]"), InvalidInput);
  CHECK_THROWS_AS(vector_from_json("[\"a\"]"), InvalidInput);
  CHECK_THROWS_AS(operator_from_json("[[1, 2]]"), InvalidInput);
  CHECK_THROWS_AS(operator_from_json("[[1, 2], [3, 4]]"), InvalidInput);
  CHECK_THROWS_AS(operator_from_json("{}"), InvalidInput);
}

TEST_CASE("trajectory CSV") {
  Trajectory tr;
  tr.times = {0.0, 0.5};
  tr.points = {project(ComplexVector{1.0, 0.0}), project(ComplexVector{0.0, 1.0})};
  tr.observables_tracked = {{"energy", {1.0, -1.0}}};
  std::ostringstream out;
  write_trajectory_csv(out, tr);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "time,re_0,im_0,re_1,im_1,energy");
  CHECK(lines[1] == "0,1,0,0,0,1");
  CHECK(lines[2] == "0.5,0,0,1,0,-1");
}

TEST_CASE("geodesic and pattern CSV headers") {
  const auto path = geodesic_between(project(ComplexVector{1.0, 0.0, 0.0}), project(ComplexVector{1.0, 1.0, 0.0}), 5);
  std::ostringstream g;
  write_geodesic_csv(g, path);
  const auto gl = lines_of(g.str());
  REQUIRE(gl.size() == 6);
  CHECK(gl[0] == "arclength,base_index,u_1,v_1,u_2,v_2");

  const GridSpec wall_grid{-2e-4, 2e-4, 101};
  const auto pat = propagate_to_screen(build_wall(wall_grid, {-5e-5, 5e-5}, 1e-5), plane_wave(wall_grid), 5e-7,
                                       1.0, GridSpec{-1e-2, 1e-2, 16});
  std::ostringstream p;
  write_pattern_csv(p, pat);
  const auto pl = lines_of(p.str());
  REQUIRE(pl.size() == 17);
  CHECK(pl[0] == "x,intensity_total,intensity_slit_0,intensity_slit_1,cross_term");
}

TEST_CASE("key value config") {
  const auto cfg = KeyValueConfig::parse_text(
      "# geometry\n"
      "wavelength = 5e-7\n"
      "\n"
      "slit_centers = -5e-5, 5e-5   # two slits\n"
      "screen_points = 64\n"
      "beam = gaussian\n",
      "test.cfg");
  CHECK(cfg.has("wavelength"));
  CHECK_FALSE(cfg.has("distance"));
  CHECK(cfg.get_real("wavelength", 0.0) == 5e-7);
  CHECK(cfg.get_real("distance", 2.0) == 2.0);
  CHECK(cfg.get_reals("slit_centers", {}) == std::vector<double>{-5e-5, 5e-5});
  CHECK(cfg.get_count("screen_points", 0) == 64);
  CHECK(cfg.get_string("beam", "plane") == "gaussian");
  CHECK(cfg.keys().size() == 4);
  CHECK_NOTHROW(cfg.require_known({"wavelength", "slit_centers", "screen_points", "beam"}));

  try {
    cfg.require_known({"wavelength", "slit_centers", "beam"});
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("test.cfg:5:") == 0);
  }
  try {
    (void)cfg.get_count("beam", 0);
    FAIL("non-numeric count accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 6);
  }
  CHECK_THROWS_AS((void)cfg.get_real("beam", 0.0), ConfigError);
}

TEST_CASE("config syntax errors carry line numbers") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      (void)KeyValueConfig::parse_text(text, "bad.cfg");
    } catch (const ConfigError& e) {
      CHECK(e.source() == "bad.cfg");
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a = 1\nb 2\n") == 2);
  CHECK(line_of("a = 1\n\n = 2\n") == 3);
  CHECK(line_of("a =\n") == 1);
  CHECK(line_of("a = 1\na = 2\n") == 2);
  CHECK(line_of("a = 1 # ok\n") == 0);
  CHECK_THROWS_AS(KeyValueConfig::parse_text("x = 1, y\n").get_reals("x", {}), ConfigError);
}

TEST_CASE("digests") {
  CHECK(Digest().hex() == "cbf29ce484222325");
  // FNV-1a over "a" and then its length as a little-endian 64-bit word.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : std::string("a\x01\0\0\0\0\0\0\0", 9)) h = (h ^ b) * 0x100000001b3ULL;
  char want[17];
  std::snprintf(want, sizeof want, "%016llx", static_cast<unsigned long long>(h));
  CHECK(Digest().add("a").hex() == want);
  CHECK(Digest().add("ab").hex() != Digest().add("a").add("b").hex());
  CHECK(Digest().add(1.0).hex() == Digest().add(1.0).hex());
  CHECK(Digest().add(1.0).hex() != Digest().add(2.0).hex());
  CHECK(Digest().add(ComplexVector{1.0, 0.0}).hex() != Digest().add(ComplexVector{0.0, 1.0}).hex());
}

TEST_CASE("reports") {
  Report r;
  r.command = "demo";
  r.seed = 7;
  r.parameters = {{"dims", "2,3"}};
  r.add("ok", "00", 1e-13, 1e-12);
  r.add("bad", "01", 1.0, 1e-12);
  r.add("nan", "02", std::numeric_limits<double>::quiet_NaN(), 1.0);
  CHECK(r.entries[0].pass);
  CHECK_FALSE(r.entries[1].pass);
  CHECK_FALSE(r.entries[2].pass);
  CHECK(r.failures() == 2);
  CHECK_FALSE(r.all_pass());

  const std::string text = r.to_json();
  CHECK(text == r.to_json());
  CHECK(text.back() == '\n');
  const auto j = nlohmann::json::parse(text);
  CHECK(j["version"] == kVersion);
  CHECK(j["command"] == "demo");
  CHECK(j["seed"] == 7);
  CHECK(j["summary"]["checks"] == 3);
  CHECK(j["summary"]["failures"] == 2);
  CHECK(j["summary"]["pass"] == false);
  CHECK(j["entries"][0]["check"] == "ok");
  CHECK(j["entries"][0]["inputs_digest"] == "00");
  CHECK(j["entries"][0]["residual"] == 1e-13);
  CHECK(j["entries"][0]["tolerance"] == 1e-12);
  CHECK(j["entries"][0]["pass"] == true);
  // Keys keep their documented order.
  CHECK(text.find("\"version\"") < text.find("\"command\""));
  CHECK(text.find("\"summary\"") < text.find("\"entries\""));

  Report empty;
  CHECK(empty.all_pass());
  CHECK(nlohmann::json::parse(empty.to_json())["summary"]["checks"] == 0);
  r.append(empty);
  CHECK(r.entries.size() == 3);
}
