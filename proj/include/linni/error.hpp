#pragma once

#include <stdexcept>
#include <string>

namespace linni {

/// Failure categories surfaced by the numerical layers.  The CLI maps every
/// kind to exit code 2 except Io (3).
enum class ErrorKind {
  NonFinite,
  NoSignChange,
  NonConvergence,
  Stall,
  Kernel,
  InsufficientRange,
  InsufficientTail,
  DivergentMoment,
  Regime,
  UnsupportedDimension,
  Dimension,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class NumericalError : public std::runtime_error {
public:
  NumericalError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class IoError : public NumericalError {
public:
  explicit IoError(const std::string& message) : NumericalError(ErrorKind::Io, message) {}
};

} // namespace linni
