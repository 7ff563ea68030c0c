#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hlim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, solver or run configuration (shape mismatch, eps <= 0, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A state violates an admissibility constraint beyond the hard tolerance.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// Malformed input to an audit or fit (too few samples, bad ordering).
class InputError : public Error {
 public:
  using Error::Error;
};

class NumericalInconsistencyError : public Error {
 public:
  using Error::Error;
};

class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or an unresolvable CFL restriction during time stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::size_t step, double time)
      : Error(what + " (step " + std::to_string(step) + ", t=" + std::to_string(time) + ")"),
        step_(step),
        time_(time) {}

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t step_;
  double time_;
};

}  // namespace hlim
