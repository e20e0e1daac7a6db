#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symdecomp {

enum class ErrorCode {
  UnknownGroup,
  BadIrrepIndex,
  InvalidGroupFile,
  IncompatibleGrid,
  EvenPartitionRejected,
  GridNotInvariant,
  SymmetryElementNode,
  PotentialNotInvariant,
  UnsupportedIrrepDim,
  MaxIterations,
  IndefiniteMass,
  IncompleteSpectrum,
  DegenerateStats,
  ShapeMismatch,
  NoIndependentColumn,
  SizeGuard,
  ConfigError,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symdecomp
