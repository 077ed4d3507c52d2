#include "binx/reclassify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <mutex>

#include "binx/error.hpp"
#include "binx/json_io.hpp"
#include "method_support.hpp"

namespace binx {

using detail::format_number;

std::vector<double> edit_breaks(std::span<const double> extents, const BreakEdit& edit) {
    if (extents.size() < 2 || !strictly_increasing(extents))
        throw Error(ErrorCode::NonMonotoneExtents, "extents must be strictly increasing with at least two values");
    std::vector<double> out(extents.begin(), extents.end());
    switch (edit.kind) {
        case BreakEdit::Kind::Add: {
            if (!(edit.value > out.front() && edit.value < out.back()))
                throw Error(ErrorCode::NonMonotoneResult,
                            "added break " + format_number(edit.value) + " must lie strictly inside the outer extents");
            const auto pos = std::lower_bound(out.begin(), out.end(), edit.value);
            if (*pos == edit.value)
                throw Error(ErrorCode::NonMonotoneResult, "break " + format_number(edit.value) + " already exists");
            out.insert(pos, edit.value);
            break;
        }
        case BreakEdit::Kind::Remove:
            if (edit.index >= out.size())
                throw Error(ErrorCode::InvalidParameter, "break index " + std::to_string(edit.index) + " out of range");
            if (edit.index == 0 || edit.index + 1 == out.size())
                throw Error(ErrorCode::CannotRemoveOuterExtent, "the outer extents cannot be removed");
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(edit.index));
            break;
        case BreakEdit::Kind::Set:
            if (edit.index >= out.size())
                throw Error(ErrorCode::InvalidParameter, "break index " + std::to_string(edit.index) + " out of range");
            if (!std::isfinite(edit.value)) throw Error(ErrorCode::NonMonotoneResult, "break must be finite");
            out[edit.index] = edit.value;
            if (!strictly_increasing(out))
                throw Error(ErrorCode::NonMonotoneResult, "moving break " + std::to_string(edit.index) + " to " +
                                                              format_number(edit.value) + " breaks the ordering");
            break;
    }
    return out;
}

namespace {

struct ResolvedPin {
    double value;
    int target;
};

std::string describe(const PinConstraint& pin) {
    if (pin.feature_id) return "feature " + *pin.feature_id;
    return "value " + format_number(pin.value.value_or(0.0));
}

std::vector<ResolvedPin> resolve(const std::vector<PinConstraint>& pins, const FeatureSeries& series, int k,
                                 double lo, double hi) {
    std::vector<ResolvedPin> out;
    for (const auto& pin : pins) {
        if (pin.target_bin < 1 || pin.target_bin > k)
            throw Error(ErrorCode::InvalidPin, describe(pin) + ": target bin " + std::to_string(pin.target_bin) +
                                                   " outside 1.." + std::to_string(k));
        double v = 0.0;
        if (pin.feature_id) {
            const auto idx = series.index_of(*pin.feature_id);
            if (!idx) throw Error(ErrorCode::InvalidPin, "unknown feature " + *pin.feature_id);
            if (series.is_missing(*idx)) throw Error(ErrorCode::InvalidPin, *pin.feature_id + " has no value");
            v = series.values()[*idx];
        } else if (pin.value && std::isfinite(*pin.value)) {
            v = *pin.value;
        } else {
            throw Error(ErrorCode::InvalidPin, "a pin needs a feature id or a finite value");
        }
        if (v < lo || v > hi)
            throw Error(ErrorCode::InvalidPin, describe(pin) + " lies outside the extents [" + format_number(lo) +
                                                   ", " + format_number(hi) + "]");
        out.push_back({v, pin.target_bin});
    }
    return out;
}

}  // namespace

PaintResult apply_pins(std::span<const double> extents, const std::vector<PinConstraint>& pins,
                       const FeatureSeries& series) {
    if (extents.size() < 2 || !strictly_increasing(extents))
        throw Error(ErrorCode::NonMonotoneExtents, "extents must be strictly increasing with at least two values");
    const int k = static_cast<int>(extents.size()) - 1;
    const double lo = extents.front(), hi = extents.back();
    auto resolved = resolve(pins, series, k, lo, hi);

    std::stable_sort(resolved.begin(), resolved.end(),
                     [](const ResolvedPin& a, const ResolvedPin& b) { return a.value < b.value; });
    for (std::size_t p = 1; p < resolved.size(); ++p) {
        const auto& a = resolved[p - 1];
        const auto& b = resolved[p];
        if (a.value == b.value && a.target != b.target)
            throw Error(ErrorCode::InfeasibleConstraints, "value " + format_number(a.value) + " is pinned to bins " +
                                                              std::to_string(a.target) + " and " +
                                                              std::to_string(b.target));
        if (b.target < a.target)
            throw Error(ErrorCode::InfeasibleConstraints,
                        "value " + format_number(a.value) + " is pinned to bin " + std::to_string(a.target) +
                            " but the larger value " + format_number(b.value) + " is pinned to bin " +
                            std::to_string(b.target));
    }

    PaintResult result;
    result.extents.assign(extents.begin(), extents.end());
    auto& e = result.extents;
    std::vector<double> lower(static_cast<std::size_t>(k), lo), upper(static_cast<std::size_t>(k), hi);
    for (int i = 1; i < k; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (const auto& p : resolved) {
            if (p.target <= i) {
                lower[ui] = std::max(lower[ui], p.value);
            } else {
                upper[ui] = std::min(upper[ui], p.value);
            }
        }
        if (!(lower[ui] < upper[ui]))
            throw Error(ErrorCode::InfeasibleConstraints,
                        "no position for break " + std::to_string(i) + " separates " + format_number(lower[ui]) +
                            " from " + format_number(upper[ui]));
    }

    const auto inside = [&](int i) {
        const auto ui = static_cast<std::size_t>(i);
        return e[ui] > lower[ui] && e[ui] <= upper[ui];
    };
    for (int i = 1; i < k; ++i) {
        if (inside(i)) continue;
        const auto ui = static_cast<std::size_t>(i);
        double cap = upper[ui];
        for (std::size_t j = ui + 1; j < e.size(); ++j)
            if (e[j] > lower[ui]) {
                cap = std::min(cap, e[j]);
                break;
            }
        e[ui] = lower[ui] + (cap - lower[ui]) / 2.0;
        result.moved.push_back(ui);
    }

    const double sep = 1e-9 * (hi - lo);
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i] > e[i - 1]) continue;
        if (i + 1 == e.size())
            throw Error(ErrorCode::ConflictingConstraints, "breaks cannot stay below the top extent");
        e[i] = e[i - 1] + sep;
        if (!inside(static_cast<int>(i)))
            throw Error(ErrorCode::ConflictingConstraints,
                        "keeping breaks ordered pushes break " + std::to_string(i) + " out of its allowed window");
        if (std::find(result.moved.begin(), result.moved.end(), i) == result.moved.end()) result.moved.push_back(i);
    }
    std::sort(result.moved.begin(), result.moved.end());

    const auto before = assign(series, extents).sizes;
    const auto after = assign(series, e).sizes;
    for (std::size_t j = 0; j < after.size(); ++j)
        if (after[j] == 0 && before[j] > 0)
            result.notes.push_back({"BinEmptied", "bin " + std::to_string(j + 1) + " no longer holds any feature"});
    return result;
}

std::string_view misuse_warning() { return "We recommend using this feature only for educational purposes."; }

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

CustomMethodStore::CustomMethodStore(std::filesystem::path file) : file_(std::move(file)) {
    if (!std::filesystem::exists(file_)) {
        std::error_code ec;
        if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path(), ec);
        return;
    }
    std::ifstream in(file_);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + file_.string());
    try {
        const auto doc = nlohmann::json::parse(in);
        for (const auto& m : doc.at("methods")) methods_.push_back(custom_method_from_json(m));
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::IoError, "corrupt custom-method store " + file_.string() + ": " + ex.what());
    }
}

CustomMethod CustomMethodStore::save(std::string name, std::vector<double> extents, Provenance provenance) {
    if (name.empty()) throw Error(ErrorCode::InvalidParameter, "custom method name must not be empty");
    if (extents.size() < 2 || !strictly_increasing(extents) ||
        !std::all_of(extents.begin(), extents.end(), [](double x) { return std::isfinite(x); }))
        throw Error(ErrorCode::InvalidExtents, "extents must be at least two strictly increasing finite values");

    std::unique_lock lock(mutex_);
    for (const auto& m : methods_)
        if (m.name == name) throw Error(ErrorCode::DuplicateName, "a custom method named '" + name + "' exists");
    CustomMethod method{std::move(name), std::move(extents), std::move(provenance), utc_now()};
    methods_.push_back(method);
    try {
        persist();
    } catch (...) {
        methods_.pop_back();
        throw;
    }
    return method;
}

bool CustomMethodStore::remove(const std::string& name) {
    std::unique_lock lock(mutex_);
    const auto it = std::find_if(methods_.begin(), methods_.end(), [&](const auto& m) { return m.name == name; });
    if (it == methods_.end()) return false;
    const auto saved = *it;
    const auto pos = methods_.erase(it);
    try {
        persist();
    } catch (...) {
        methods_.insert(pos, saved);
        throw;
    }
    return true;
}

std::optional<CustomMethod> CustomMethodStore::find(const std::string& name) const {
    std::shared_lock lock(mutex_);
    for (const auto& m : methods_)
        if (m.name == name) return m;
    return std::nullopt;
}

std::vector<CustomMethod> CustomMethodStore::list() const {
    std::shared_lock lock(mutex_);
    return methods_;
}

std::optional<std::vector<double>> CustomMethodStore::find_extents(const std::string& name) const {
    if (auto m = find(name)) return m->extents;
    return std::nullopt;
}

void CustomMethodStore::persist() const {
    if (file_.empty()) return;
    nlohmann::ordered_json doc;
    doc["methods"] = nlohmann::ordered_json::array();
    for (const auto& m : methods_) doc["methods"].push_back(to_json(m));
    auto tmp = file_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
        out << doc.dump(2) << '\n';
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file_, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot replace " + file_.string() + ": " + ec.message());
}

}  // namespace binx
