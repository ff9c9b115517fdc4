// Text formats: complex vectors and operators as JSON arrays of [re, im]
// pairs (row-major for matrices), CSV exports, and flat key-value config.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gqm/dynamics.hpp"
#include "gqm/geodesics.hpp"
#include "gqm/interference.hpp"
#include "gqm/linalg.hpp"

namespace gqm {

/// "%.17g": enough digits to round-trip every double.
std::string format_real(double x);

std::string vector_to_json(const ComplexVector& v);
std::string operator_to_json(const HermitianOperator& op);
/// Accepts [[re, im], ...]; plain numbers are read as real entries.
ComplexVector vector_from_json(std::string_view text);
/// Accepts [[[re, im], ...], ...] row-major, square, Hermitian to 1e-12.
HermitianOperator operator_from_json(std::string_view text);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_geodesic_csv(std::ostream& out, const GeodesicPath& path);
void write_pattern_csv(std::ostream& out, const InterferencePattern& pattern);

/// Input error tied to a line of a config file.
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// `key = value` lines; `#` starts a comment; blank lines are skipped.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& source);
  static KeyValueConfig parse_text(std::string_view text, const std::string& source = "<text>");

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::vector<std::string> keys() const;
  const std::string& source() const noexcept { return source_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_real(const std::string& key, double fallback) const;
  std::size_t get_count(const std::string& key, std::size_t fallback) const;
  std::vector<double> get_reals(const std::string& key, const std::vector<double>& fallback) const;
  /// One of `allowed`; anything else throws ConfigError at the key's line.
  std::string get_choice(const std::string& key, const std::string& fallback,
                         const std::vector<std::string>& allowed) const;

  /// Throws ConfigError naming the line of a key not in `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

 private:
  struct Entry {
    std::string value;
    std::size_t line;
  };
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
};

}  // namespace gqm
