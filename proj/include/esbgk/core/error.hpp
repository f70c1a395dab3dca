#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esbgk {

/// Base for every error raised by the solver core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or incomplete scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. T <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Failure of the numerical scheme during a run. Carries the step index and
/// the flat spatial cell index when known (npos otherwise).
class NumericalError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit NumericalError(const std::string& what, std::size_t step = npos,
                          std::size_t cell = npos)
      : Error(what), step_(step), cell_(cell) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t step_;
  std::size_t cell_;
};

/// Cholesky-style factorization of the corrected tensor failed.
class SpdError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Explicit transport step violates the configured CFL limit.
class CflError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace esbgk
