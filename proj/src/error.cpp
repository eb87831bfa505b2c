#include "linni/error.hpp"

namespace linni {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::NonFinite: return "NonFinite";
  case ErrorKind::NoSignChange: return "NoSignChange";
  case ErrorKind::NonConvergence: return "NonConvergence";
  case ErrorKind::Stall: return "Stall";
  case ErrorKind::Kernel: return "Kernel";
  case ErrorKind::InsufficientRange: return "InsufficientRange";
  case ErrorKind::InsufficientTail: return "InsufficientTail";
  case ErrorKind::DivergentMoment: return "DivergentMoment";
  case ErrorKind::Regime: return "Regime";
  case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
  case ErrorKind::Dimension: return "Dimension";
  case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

} // namespace linni
