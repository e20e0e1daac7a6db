#include "symdecomp/error.hpp"

namespace symdecomp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::BadIrrepIndex: return "BadIrrepIndex";
    case ErrorCode::InvalidGroupFile: return "InvalidGroupFile";
    case ErrorCode::IncompatibleGrid: return "IncompatibleGrid";
    case ErrorCode::EvenPartitionRejected: return "EvenPartitionRejected";
    case ErrorCode::GridNotInvariant: return "GridNotInvariant";
    case ErrorCode::SymmetryElementNode: return "SymmetryElementNode";
    case ErrorCode::PotentialNotInvariant: return "PotentialNotInvariant";
    case ErrorCode::UnsupportedIrrepDim: return "UnsupportedIrrepDim";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::IndefiniteMass: return "IndefiniteMass";
    case ErrorCode::IncompleteSpectrum: return "IncompleteSpectrum";
    case ErrorCode::DegenerateStats: return "DegenerateStats";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NoIndependentColumn: return "NoIndependentColumn";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace symdecomp
