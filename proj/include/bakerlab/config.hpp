#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bakerlab {

/// Raised for unparseable or out-of-range configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat key = value experiment description. '#' starts a comment.
class ExperimentConfig {
 public:
  static ExperimentConfig from_text(std::string_view text);
  static ExperimentConfig from_file(const std::filesystem::path& path);

  void set(std::string key, std::string value);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  /// Comma-separated list of doubles.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  /// Like get_double, but the value must be strictly positive.
  double get_positive(const std::string& key, double fallback) const;

  std::string command() const { return get_string("command", ""); }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace bakerlab
