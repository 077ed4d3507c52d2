#pragma once

// JSON forms shared by the CLI and the HTTP service. Everything is emitted
// as ordered_json so both front-ends dump byte-identical documents.

#include <json.hpp>

#include "binx/binning.hpp"
#include "binx/consensus.hpp"
#include "binx/dataset.hpp"
#include "binx/error.hpp"
#include "binx/methods.hpp"
#include "binx/palette.hpp"
#include "binx/profile.hpp"
#include "binx/reclassify.hpp"

namespace binx {

using ojson = nlohmann::ordered_json;

/// Canonical text form of a JSON document (two-space indent, trailing newline).
std::string dump(const ojson& doc);

ojson to_json(const MethodSpec& spec);
ojson to_json(const BinningResult& result);
ojson to_json(const MethodDescriptor& descriptor);
ojson to_json(const ConsensusMatrix& matrix);
ojson to_json(const PinConstraint& pin);
ojson to_json(const CustomMethod& method);
ojson to_json(const RuleViolation& violation);
ojson to_json(const Note& note);
ojson to_json(const Profile& profile);
ojson to_json(const JoinReport& report);
/// Includes the misuse warning alongside the solved extents.
ojson to_json(const PaintResult& result);
/// Catalog entry with a preview of up to seven colors.
ojson to_json(const Palette& palette);

/// Parses {"method": "...", "binCount": 5, ...}; unknown fields are ignored,
/// missing ones take defaults. Throws InvalidParameter / UnknownMethod.
MethodSpec method_spec_from_json(const nlohmann::json& j);
PinConstraint pin_from_json(const nlohmann::json& j);
CustomMethod custom_method_from_json(const nlohmann::json& j);

/// Error body {"code", "message", "details"}.
ojson error_json(ErrorCode code, const std::string& message, const std::string& details = {});

}  // namespace binx
