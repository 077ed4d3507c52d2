#pragma once

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "binx/binning.hpp"
#include "binx/methods.hpp"
#include "binx/series.hpp"

namespace binx {

struct BreakEdit {
    enum class Kind { Add, Remove, Set };
    Kind kind = Kind::Add;
    std::size_t index = 0;  // Remove / Set
    double value = 0.0;     // Add / Set

    static BreakEdit add(double v) { return {Kind::Add, 0, v}; }
    static BreakEdit remove(std::size_t i) { return {Kind::Remove, i, 0.0}; }
    static BreakEdit set(std::size_t i, double v) { return {Kind::Set, i, v}; }
};

/// Throws NonMonotoneResult, CannotRemoveOuterExtent.
std::vector<double> edit_breaks(std::span<const double> extents, const BreakEdit& edit);

/// Forces a feature (or a raw value) into a 1-based target bin.
struct PinConstraint {
    std::optional<FeatureId> feature_id;
    std::optional<double> value;
    int target_bin = 1;
};

struct PaintResult {
    std::vector<double> extents;
    std::vector<std::size_t> moved;  // indices of breaks that changed
    std::vector<Note> notes;
};

/// Re-solves interior breaks so every pin lands in its target bin while the
/// bin count stays fixed. Throws InvalidPin, InfeasibleConstraints,
/// ConflictingConstraints.
PaintResult apply_pins(std::span<const double> extents, const std::vector<PinConstraint>& pins,
                       const FeatureSeries& series);

/// The warning shown wherever paint mode is offered.
std::string_view misuse_warning();

struct Provenance {
    std::string seed_method_id;
    std::vector<PinConstraint> constraint_log;
};

struct CustomMethod {
    std::string name;
    std::vector<double> extents;
    Provenance provenance;
    std::string created_at;  // ISO-8601 UTC
};

/// Saved custom methods. With a path, every write atomically replaces a
/// single JSON document on disk; without one the store is memory-only.
class CustomMethodStore : public CustomMethodSource {
public:
    CustomMethodStore() = default;
    explicit CustomMethodStore(std::filesystem::path file);

    /// Throws DuplicateName, InvalidExtents, InvalidParameter (empty name).
    CustomMethod save(std::string name, std::vector<double> extents, Provenance provenance);
    bool remove(const std::string& name);
    std::optional<CustomMethod> find(const std::string& name) const;
    std::vector<CustomMethod> list() const;

    std::optional<std::vector<double>> find_extents(const std::string& name) const override;

private:
    void persist() const;

    std::filesystem::path file_;
    mutable std::shared_mutex mutex_;
    std::vector<CustomMethod> methods_;
};

}  // namespace binx
