#pragma once

#include <stdexcept>
#include <string>

namespace posthoc {

/// Caller broke a documented precondition (space mismatch, malformed mass, ...).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Loss threshold C does not exceed L(0).
class InvalidThreshold : public std::domain_error {
 public:
  explicit InvalidThreshold(const std::string& what) : std::domain_error(what) {}
};

/// A replication construction was asked for a profile in the other regime.
class WrongRegime : public std::domain_error {
 public:
  explicit WrongRegime(const std::string& what) : std::domain_error(what) {}
};

/// Pointwise comparison of randomized tests that do not share a rejection event.
class UncoupledComparison : public std::logic_error {
 public:
  explicit UncoupledComparison(const std::string& what) : std::logic_error(what) {}
};

/// E-value operations on a family with interior rejection probabilities.
class RandomizedEValue : public std::domain_error {
 public:
  explicit RandomizedEValue(const std::string& what) : std::domain_error(what) {}
};

/// Malformed scenario, report, or CLI input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace posthoc
