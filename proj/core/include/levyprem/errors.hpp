#pragma once

#include <stdexcept>
#include <string>

namespace levyprem {

// Error families map one-to-one onto CLI exit codes.
enum class ErrorFamily {
  config,       // bad user input: parameters, flags, config files
  io,           // files missing, unreadable, malformed
  feasibility,  // MGF / premium arguments outside a model's domain
  convergence,  // optimizers and root finders that could not finish
  numerical,    // domain errors of scalar functions, inversion quality
};

class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, const std::string& what)
      : std::runtime_error(what), family_(family) {}

  ErrorFamily family() const noexcept { return family_; }

 private:
  ErrorFamily family_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what)
      : Error(ErrorFamily::config, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorFamily::numerical, what) {}
};

class FeasibilityError : public Error {
 public:
  explicit FeasibilityError(const std::string& what)
      : Error(ErrorFamily::feasibility, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error(ErrorFamily::convergence, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorFamily::io, what) {}
};

const char* to_string(ErrorFamily family) noexcept;

}  // namespace levyprem
