#include "wavelab/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wavelab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw DomainError("config key '" + key + "': not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    }
    cfg.entries_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  return v ? to_double(key, *v) : fallback;
}

double KeyValueConfig::require_double(const std::string& key) const {
  auto v = get(key);
  if (!v) throw DomainError("config key '" + key + "' is required");
  return to_double(key, *v);
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  const double d = to_double(key, *v);
  if (d != static_cast<double>(static_cast<int>(d))) {
    throw DomainError("config key '" + key + "': expected an integer");
  }
  return static_cast<int>(d);
}

ProblemParams params_from_config(const KeyValueConfig& cfg) {
  ProblemParams::Values v;
  v.n = cfg.get_int("n", v.n);
  v.p = cfg.get_double("p", v.p);
  v.alpha = cfg.get_double("alpha", v.alpha);
  v.beta = cfg.get_double("beta", v.beta);
  v.mu1 = cfg.get_double("mu1", v.mu1);
  v.mu2 = cfg.get_double("mu2", v.mu2);
  v.eps = cfg.get_double("eps", v.eps);
  v.R = cfg.get_double("R", v.R);
  return ProblemParams(v);
}

}  // namespace wavelab
