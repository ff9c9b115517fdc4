#include "gqm/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace gqm {

namespace {

using nlohmann::json;

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidInput("complex entry must be a number or a [re, im] pair, got " + j.dump());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Eigen::VectorXcd vector_entries(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("complex vector must be a non-empty JSON array");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(j[i]);
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string vector_to_json(const ComplexVector& v) {
  json j = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) j.push_back(complex_json(v[i]));
  return j.dump();
}

std::string operator_to_json(const HermitianOperator& op) {
  const Eigen::MatrixXcd& m = op.entries();
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

ComplexVector vector_from_json(std::string_view text) { return ComplexVector(vector_entries(parse_json(text))); }

HermitianOperator operator_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array() || j.empty()) throw InvalidInput("operator must be a non-empty JSON array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::VectorXcd row = vector_entries(j[static_cast<std::size_t>(r)]);
    if (row.size() != n) throw InvalidInput("operator must be square");
    m.row(r) = row.transpose();
  }
  return HermitianOperator(m);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const std::size_t dim = trajectory.points.empty() ? 0 : trajectory.points.front().dim();
  out << "time";
  for (std::size_t i = 0; i < dim; ++i) out << ",re_" << i << ",im_" << i;
  for (const auto& [label, values] : trajectory.observables_tracked) out << ',' << label;
  out << '\n';
  for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
    out << format_real(trajectory.times[s]);
    const ComplexVector& rep = trajectory.points[s].rep();
    for (std::size_t i = 0; i < dim; ++i) out << ',' << format_real(rep[i].real()) << ',' << format_real(rep[i].imag());
    for (const auto& tracked : trajectory.observables_tracked) out << ',' << format_real(tracked.second[s]);
    out << '\n';
  }
}

void write_geodesic_csv(std::ostream& out, const GeodesicPath& path) {
  const std::size_t m = path.samples.empty() ? 0 : path.samples.front().point.coords.size();
  out << "arclength,base_index";
  for (std::size_t i = 1; i <= m; ++i) out << ",u_" << i << ",v_" << i;
  out << '\n';
  for (const auto& s : path.samples) {
    out << format_real(s.arclength) << ',' << s.point.base_index;
    for (const Complex t : s.point.coords) out << ',' << format_real(t.real()) << ',' << format_real(t.imag());
    out << '\n';
  }
}

void write_pattern_csv(std::ostream& out, const InterferencePattern& pattern) {
  out << "x,intensity_total";
  for (std::size_t i = 0; i < pattern.per_slit_amplitudes.size(); ++i) out << ",intensity_slit_" << i;
  out << ",cross_term\n";
  for (std::size_t x = 0; x < pattern.screen_positions.size(); ++x) {
    out << format_real(pattern.screen_positions[x]) << ',' << format_real(pattern.total_intensity[x]);
    for (const auto& phi : pattern.per_slit_amplitudes) out << ',' << format_real(std::norm(phi[x]));
    out << ',' << format_real(pattern.cross_term[x]) << '\n';
  }
}

ConfigError::ConfigError(std::string source, std::size_t line, const std::string& what)
    : InvalidInput(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line) {}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view view(raw);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const std::string text = trim(view);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line, "expected `key = value`, got `" + text + "`");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ConfigError(source, line, "missing key before `=`");
    if (value.empty()) throw ConfigError(source, line, "missing value for `" + key + "`");
    if (cfg.entries_.count(key))
      throw ConfigError(source, line,
                        "duplicate key `" + key + "` (first set on line " +
                            std::to_string(cfg.entries_.at(key).line) + ")");
    cfg.entries_.emplace(key, Entry{value, line});
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_text(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  return parse(in, source);
}

std::vector<std::string> KeyValueConfig::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_) out.push_back(k);
  return out;
}

void KeyValueConfig::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(source_, entries_.at(key).line, what);
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

double KeyValueConfig::get_real(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  double x = 0.0;
  if (!parse_double(it->second.value, x) || !std::isfinite(x))
    fail(key, "`" + key + "` must be a finite real, got `" + it->second.value + "`");
  return x;
}

std::size_t KeyValueConfig::get_count(const std::string& key, std::size_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& s = it->second.value;
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(key, "`" + key + "` must be a non-negative integer, got `" + s + "`");
  return n;
}

std::vector<double> KeyValueConfig::get_reals(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double x = 0.0;
    const std::string t = trim(item);
    if (!parse_double(t, x) || !std::isfinite(x))
      fail(key, "`" + key + "` must be a comma-separated list of reals, got `" + it->second.value + "`");
    out.push_back(x);
  }
  return out;
}

std::string KeyValueConfig::get_choice(const std::string& key, const std::string& fallback,
                                       const std::vector<std::string>& allowed) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  for (const auto& a : allowed)
    if (a == it->second.value) return a;
  std::string options;
  for (const auto& a : allowed) options += (options.empty() ? "`" : ", `") + a + "`";
  fail(key, "`" + key + "` must be one of " + options + ", got `" + it->second.value + "`");
}

void KeyValueConfig::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, entry] : entries_) {
    bool known = false;
    for (const auto& a : allowed) known = known || a == key;
    if (!known) throw ConfigError(source_, entry.line, "unknown key `" + key + "`");
  }
}

}  // namespace gqm
