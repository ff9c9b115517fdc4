// Check reports shared by every suite: a metadata header and a list of
// (check, inputs digest, residual, tolerance, pass) entries.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gqm/linalg.hpp"

namespace gqm {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a (64-bit) over the bytes of the inputs of a check.
class Digest {
 public:
  Digest& add(std::string_view s);
  Digest& add(double x);
  Digest& add(std::uint64_t x);
  Digest& add(const ComplexVector& v);
  Digest& add(const HermitianOperator& op);
  std::string hex() const;

 private:
  void bytes(const void* data, std::size_t n);
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

struct ReportEntry {
  std::string check_name;
  std::string inputs_digest;
  double residual;
  double tolerance;
  bool pass;  // residual <= tolerance; a NaN residual fails
};

ReportEntry make_entry(std::string check_name, std::string inputs_digest, double residual, double tolerance);

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> warnings;
  std::vector<ReportEntry> entries;

  void add(std::string check_name, std::string inputs_digest, double residual, double tolerance);
  void append(const Report& other);
  bool all_pass() const;
  std::size_t failures() const;
  /// Indented JSON; identical inputs give byte-identical text.
  std::string to_json() const;
};

}  // namespace gqm
