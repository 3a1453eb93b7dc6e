#pragma once

#include <map>
#include <optional>
#include <string>

#include "wavelab/params.hpp"

namespace wavelab {

// Plain-text `key = value` configuration. Blank lines and `#` comments are
// ignored; later assignments override earlier ones.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value) { entries_[key] = value; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

// Keys: n, p, alpha, beta, mu1, mu2, eps, R. Missing keys keep the
// ProblemParams::Values defaults.
ProblemParams params_from_config(const KeyValueConfig& cfg);

}  // namespace wavelab
