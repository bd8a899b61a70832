#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace torcx {

/// Invalid argument for a mathematical operation (wrong degree, zero divisor, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition did not hold; carries the measured residual.
class PreconditionError : public std::logic_error {
 public:
  PreconditionError(const std::string& what, double residual)
      : std::logic_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Requested computation exceeds a configured resource bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Right-hand side violates the compatibility conditions.
class CompatibilityError : public std::runtime_error {
 public:
  CompatibilityError(const std::string& what, std::vector<std::string> offenders)
      : std::runtime_error(what), offenders_(std::move(offenders)) {}
  const std::vector<std::string>& offenders() const { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

/// Coefficient profile fails p_j d_k c_j = p_k d_j c_k somewhere on the box.
class ClosednessError : public std::runtime_error {
 public:
  ClosednessError(const std::string& what, std::vector<std::string> offenders)
      : std::runtime_error(what), offenders_(std::move(offenders)) {}
  const std::vector<std::string>& offenders() const { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

}  // namespace torcx
