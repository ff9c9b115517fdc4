#include "gqm/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace gqm {

Digest& Digest::add(std::string_view s) {
  bytes(s.data(), s.size());
  return add(static_cast<std::uint64_t>(s.size()));
}

Digest& Digest::add(double x) {
  bytes(&x, sizeof x);
  return *this;
}

Digest& Digest::add(std::uint64_t x) {
  bytes(&x, sizeof x);
  return *this;
}

Digest& Digest::add(const ComplexVector& v) {
  add(static_cast<std::uint64_t>(v.dim()));
  for (std::size_t i = 0; i < v.dim(); ++i) add(v[i].real()).add(v[i].imag());
  return *this;
}

Digest& Digest::add(const HermitianOperator& op) {
  const Eigen::MatrixXcd& m = op.entries();
  add(static_cast<std::uint64_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) add(m(r, c).real()).add(m(r, c).imag());
  return *this;
}

void Digest::bytes(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    state_ ^= p[i];
    state_ *= 0x100000001b3ULL;
  }
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

ReportEntry make_entry(std::string check_name, std::string inputs_digest, double residual, double tolerance) {
  return {std::move(check_name), std::move(inputs_digest), residual, tolerance, residual <= tolerance};
}

void Report::add(std::string check_name, std::string inputs_digest, double residual, double tolerance) {
  entries.push_back(make_entry(std::move(check_name), std::move(inputs_digest), residual, tolerance));
}

void Report::append(const Report& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

bool Report::all_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.pass ? 0 : 1;
  return n;
}

std::string Report::to_json() const {
  using nlohmann::ordered_json;
  auto real = [](double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(std::to_string(x)); };

  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  ordered_json list = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json j;
    j["check"] = e.check_name;
    j["inputs_digest"] = e.inputs_digest;
    j["residual"] = real(e.residual);
    j["tolerance"] = real(e.tolerance);
    j["pass"] = e.pass;
    list.push_back(std::move(j));
  }
  ordered_json root;
  root["version"] = kVersion;
  root["command"] = command;
  root["seed"] = seed;
  root["parameters"] = std::move(params);
  root["warnings"] = warnings;
  root["summary"] = {{"checks", entries.size()}, {"failures", failures()}, {"pass", all_pass()}};
  root["entries"] = std::move(list);
  return root.dump(2) + "\n";
}

}  // namespace gqm
