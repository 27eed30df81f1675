#pragma once

#include <stdexcept>
#include <string>

namespace btai {

/// An observation was given zero probability by the model.
class ImpossibleEvidence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// KL divergence against a reference with a zero where the argument has mass.
class InfiniteDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition (dimension mismatch, bad index, double expansion).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Planning was asked for an action before any expansion happened.
class PlanningNeverRan : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid configuration. Carries the offending key and, for file input, its line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message, int line = 0)
      : std::runtime_error(format(key, message, line)), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, const std::string& message, int line) {
    std::string out = "invalid '" + key + "'";
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    return out + ": " + message;
  }

  std::string key_;
  int line_;
};

}  // namespace btai
