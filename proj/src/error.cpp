#include "binx/error.hpp"

namespace binx {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::NonMonotoneExtents: return "NonMonotoneExtents";
        case ErrorCode::MismatchedInputs: return "MismatchedInputs";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::InvalidBinCount: return "InvalidBinCount";
        case ErrorCode::InvalidIntervalSize: return "InvalidIntervalSize";
        case ErrorCode::TooManyBins: return "TooManyBins";
        case ErrorCode::TooManyValues: return "TooManyValues";
        case ErrorCode::InvalidGrowth: return "InvalidGrowth";
        case ErrorCode::InvalidIqrFactor: return "InvalidIqrFactor";
        case ErrorCode::InvalidThreshold: return "InvalidThreshold";
        case ErrorCode::NotEnoughDistinctValues: return "NotEnoughDistinctValues";
        case ErrorCode::KExceedsDistinct: return "KExceedsDistinct";
        case ErrorCode::NonMonotoneBreaks: return "NonMonotoneBreaks";
        case ErrorCode::UnknownMethod: return "UnknownMethod";
        case ErrorCode::BinCountMismatch: return "BinCountMismatch";
        case ErrorCode::TooFewMethods: return "TooFewMethods";
        case ErrorCode::PaletteTooSmall: return "PaletteTooSmall";
        case ErrorCode::BinCountExceedsPalette: return "BinCountExceedsPalette";
        case ErrorCode::InvalidHex: return "InvalidHex";
        case ErrorCode::UnknownPalette: return "UnknownPalette";
        case ErrorCode::NonMonotoneResult: return "NonMonotoneResult";
        case ErrorCode::CannotRemoveOuterExtent: return "CannotRemoveOuterExtent";
        case ErrorCode::InvalidPin: return "InvalidPin";
        case ErrorCode::InfeasibleConstraints: return "InfeasibleConstraints";
        case ErrorCode::ConflictingConstraints: return "ConflictingConstraints";
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::InvalidExtents: return "InvalidExtents";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::UnparseableRow: return "UnparseableRow";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::InvalidGeoJson: return "InvalidGeoJson";
        case ErrorCode::MissingIdProperty: return "MissingIdProperty";
        case ErrorCode::EmptyJoin: return "EmptyJoin";
        case ErrorCode::UnsupportedTarget: return "UnsupportedTarget";
        case ErrorCode::UnknownDataset: return "UnknownDataset";
        case ErrorCode::UnknownAttribute: return "UnknownAttribute";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

ErrorKind kind_of(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DuplicateName: return ErrorKind::Conflict;
        case ErrorCode::InfeasibleConstraints:
        case ErrorCode::ConflictingConstraints: return ErrorKind::Infeasible;
        case ErrorCode::IoError: return ErrorKind::Internal;
        default: return ErrorKind::Input;
    }
}

}  // namespace binx
