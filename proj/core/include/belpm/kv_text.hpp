#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace belpm {

/// 17 significant digits; parses back to the identical double.
std::string format_double(double value);
std::string format_doubles(const std::vector<double>& values);

double parse_double(std::string_view text);
std::size_t parse_size(std::string_view text);
std::int64_t parse_int(std::string_view text);
std::vector<double> parse_doubles(std::string_view text);

std::string_view trim(std::string_view text);

/// Ordered `key = value` document. '#' comment lines and blank lines are
/// skipped on parse; duplicate keys are rejected.
class KvDocument {
 public:
  static KvDocument parse(std::string_view text);

  void set(std::string key, std::string value);
  void set(std::string key, double value) { set(std::move(key), format_double(value)); }
  void set(std::string key, std::size_t value) { set(std::move(key), std::to_string(value)); }
  void set(std::string key, const std::vector<double>& values) {
    set(std::move(key), format_doubles(values));
  }

  bool contains(std::string_view key) const;
  std::optional<std::string_view> find(std::string_view key) const;

  /// Throw ConfigError when the key is missing or malformed.
  std::string_view get(std::string_view key) const;
  double get_double(std::string_view key) const;
  std::size_t get_size(std::string_view key) const;
  std::vector<double> get_doubles(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

  /// One `key = value` line per entry, LF-terminated.
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace belpm
