#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wavelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by ProblemParams construction; carries every violated constraint.
class ParameterError : public Error {
 public:
  explicit ParameterError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Result not representable in double precision.
class RangeError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Asymptotic formula requested outside its validity guard.
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoRootError : public Error {
 public:
  NoRootError(const std::string& what, double min_value)
      : Error(what), min_value_(min_value) {}
  double min_value() const noexcept { return min_value_; }

 private:
  double min_value_;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class SearchExhaustedError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

// A Kato-lemma hypothesis failed numerically; hypothesis() names it.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string hypothesis, const std::string& detail)
      : Error(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace wavelab
