#include "wavelab/params.hpp"

#include <cmath>
#include <sstream>

namespace wavelab {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  os << "invalid problem parameters:";
  for (const auto& s : items) os << "\n  - " << s;
  return os.str();
}

}  // namespace

ParameterError::ParameterError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

std::vector<std::string> ProblemParams::violations(const Values& v) {
  std::vector<std::string> out;
  auto check = [&out](bool ok, const char* msg) {
    if (!ok) out.emplace_back(msg);
  };
  // NaN fails every comparison, so it is reported too.
  check(v.n >= 1, "n >= 1");
  check(v.p > 1.0, "p > 1");
  check(v.alpha < 1.0, "alpha < 1");
  check(v.beta > 1.0, "beta > 1");
  check(v.mu1 >= 0.0, "mu1 >= 0");
  check(v.mu2 > 0.0, "mu2 > 0");
  check(v.eps > 0.0, "eps > 0");
  check(v.R >= 1.0, "R >= 1");
  check(std::isfinite(v.p) && std::isfinite(v.alpha) && std::isfinite(v.beta) &&
            std::isfinite(v.mu1) && std::isfinite(v.mu2) && std::isfinite(v.eps) &&
            std::isfinite(v.R),
        "all parameters finite");
  return out;
}

ProblemParams::ProblemParams(const Values& v) : v_(v) {
  auto bad = violations(v);
  if (!bad.empty()) throw ParameterError(std::move(bad));
}

ProblemParams ProblemParams::with_eps(double eps) const {
  Values v = v_;
  v.eps = eps;
  return ProblemParams(v);
}

double CoefficientSet::damping_coeff(double t) const {
  return params_.mu1() * std::pow(1.0 + t, -params_.beta());
}

double CoefficientSet::mass_coeff(double t) const {
  return params_.mu2() * std::pow(1.0 + t, -(params_.alpha() + 1.0));
}

double CoefficientSet::multiplier(double t) const {
  const double b = params_.beta();
  return std::exp(params_.mu1() * std::pow(1.0 + t, 1.0 - b) / (1.0 - b));
}

double CoefficientSet::multiplier_floor() const {
  return std::exp(params_.mu1() / (1.0 - params_.beta()));
}

}  // namespace wavelab
