#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace binx {

enum class ErrorCode {
    // series / core
    EmptySeries,
    NonMonotoneExtents,
    MismatchedInputs,
    InvalidParameter,
    // methods
    InvalidBinCount,
    InvalidIntervalSize,
    TooManyBins,
    TooManyValues,
    InvalidGrowth,
    InvalidIqrFactor,
    InvalidThreshold,
    NotEnoughDistinctValues,
    KExceedsDistinct,
    NonMonotoneBreaks,
    UnknownMethod,
    BinCountMismatch,
    TooFewMethods,
    // consensus / palette
    PaletteTooSmall,
    BinCountExceedsPalette,
    InvalidHex,
    UnknownPalette,
    // create view
    NonMonotoneResult,
    CannotRemoveOuterExtent,
    InvalidPin,
    InfeasibleConstraints,
    ConflictingConstraints,
    DuplicateName,
    InvalidExtents,
    // data io
    MissingColumn,
    UnparseableRow,
    DuplicateId,
    InvalidGeoJson,
    MissingIdProperty,
    EmptyJoin,
    UnsupportedTarget,
    UnknownDataset,
    UnknownAttribute,
    FileNotFound,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// How the error should be surfaced at the process / HTTP boundary.
enum class ErrorKind { Input, Conflict, Infeasible, Internal };

ErrorKind kind_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string details = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          message_(message),
          details_(std::move(details)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& details() const noexcept { return details_; }

private:
    ErrorCode code_;
    std::string message_;
    std::string details_;
};

}  // namespace binx
