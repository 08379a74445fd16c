#pragma once

#include <stdexcept>
#include <string>

namespace finphase {

/// Caller handed in something that violates a documented precondition
/// (dimension mismatch, non-Hermitian density matrix, bad scale...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a special function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not meet its tolerance. The message names
/// the module and the tolerance that was breached.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

}  // namespace finphase
