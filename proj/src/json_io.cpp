#include "binx/json_io.hpp"

#include <algorithm>
#include <cmath>

#include "binx/error.hpp"

namespace binx {

std::string dump(const ojson& doc) { return doc.dump(2) + "\n"; }

namespace {

std::string_view step_name(StdDevStep s) { return s == StdDevStep::Half ? "half" : "whole"; }

template <class J>
const J* field(const J& j, const char* name) {
    const auto it = j.find(name);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

double number_field(const nlohmann::json& j, const char* name, double fallback) {
    const auto* f = field(j, name);
    if (!f) return fallback;
    if (!f->is_number()) throw Error(ErrorCode::InvalidParameter, std::string(name) + " must be a number");
    return f->get<double>();
}

}  // namespace

ojson to_json(const MethodSpec& raw) {
    const MethodSpec s = normalized(raw);
    ojson j;
    j["method"] = method_id(s);
    switch (s.method) {
        case Method::EqualInterval:
        case Method::PrettyBreaks:
        case Method::GeometricInterval:
        case Method::Quantile:
        case Method::MaximumBreaks:
        case Method::NaturalBreaks:
        case Method::CkMeans: j["binCount"] = s.bin_count; break;
        case Method::DefinedInterval: j["definedIntervalSize"] = s.defined_interval_size; break;
        case Method::ExponentialBinSizes:
            j["binCount"] = s.bin_count;
            j["expGrowth"] = s.exp_growth;
            break;
        case Method::ManualInterval: j["manualBreaks"] = s.manual_breaks; break;
        case Method::BoxPlot: j["iqrFactor"] = s.iqr_factor; break;
        case Method::StdDeviation:
            j["binCount"] = s.bin_count;
            j["stdDevStep"] = step_name(s.std_dev_step);
            break;
        case Method::HeadTailBreaks: j["headTailThreshold"] = s.head_tail_threshold; break;
        case Method::Resiliency:
            j["binCount"] = s.bin_count;
            j["memberMethods"] = s.member_methods;
            break;
        case Method::Unclassed:
        case Method::Percentile:
        case Method::Custom: break;
    }
    return j;
}

MethodSpec method_spec_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_method_id(j.get<std::string>());
    if (!j.is_object()) throw Error(ErrorCode::InvalidParameter, "method spec must be an object or a method id");
    const auto* m = field(j, "method");
    if (!m || !m->is_string()) throw Error(ErrorCode::InvalidParameter, "method spec needs a \"method\" string");
    MethodSpec s = parse_method_id(m->get<std::string>());

    const double k = number_field(j, "binCount", s.bin_count);
    if (k != std::floor(k) || std::abs(k) > 1e9) throw Error(ErrorCode::InvalidBinCount, "binCount must be an integer");
    s.bin_count = static_cast<int>(k);
    s.defined_interval_size = number_field(j, "definedIntervalSize", s.defined_interval_size);
    s.iqr_factor = number_field(j, "iqrFactor", s.iqr_factor);
    s.head_tail_threshold = number_field(j, "headTailThreshold", s.head_tail_threshold);
    s.exp_growth = number_field(j, "expGrowth", s.exp_growth);
    if (const auto* b = field(j, "manualBreaks")) {
        if (!b->is_array()) throw Error(ErrorCode::InvalidParameter, "manualBreaks must be an array of numbers");
        for (const auto& x : *b) {
            if (!x.is_number()) throw Error(ErrorCode::InvalidParameter, "manualBreaks must be an array of numbers");
            s.manual_breaks.push_back(x.get<double>());
        }
    }
    if (const auto* st = field(j, "stdDevStep")) {
        const auto v = st->is_string() ? st->get<std::string>() : std::string();
        if (v == "whole")
            s.std_dev_step = StdDevStep::Whole;
        else if (v == "half")
            s.std_dev_step = StdDevStep::Half;
        else
            throw Error(ErrorCode::InvalidParameter, "stdDevStep must be \"whole\" or \"half\"");
    }
    if (const auto* mm = field(j, "memberMethods")) {
        if (!mm->is_array()) throw Error(ErrorCode::InvalidParameter, "memberMethods must be an array of method ids");
        for (const auto& x : *mm) {
            if (!x.is_string()) throw Error(ErrorCode::InvalidParameter, "memberMethods must be an array of method ids");
            s.member_methods.push_back(x.get<std::string>());
        }
    }
    return s;
}

ojson to_json(const Note& note) { return ojson{{"code", note.code}, {"message", note.message}}; }

ojson to_json(const BinningResult& r) {
    ojson j;
    j["method"] = to_json(r.method);
    j["extents"] = r.extents;
    j["binSizes"] = r.bin_sizes;
    ojson assignments = ojson::object();
    for (std::size_t i = 0; i < r.feature_ids.size(); ++i)
        assignments[r.feature_ids[i]] = r.assignments[i] ? ojson(*r.assignments[i]) : ojson(nullptr);
    j["assignments"] = std::move(assignments);
    if (r.unclassed_positions) {
        ojson pos = ojson::object();
        for (std::size_t i = 0; i < r.feature_ids.size(); ++i) {
            const auto& t = (*r.unclassed_positions)[i];
            pos[r.feature_ids[i]] = t ? ojson(*t) : ojson(nullptr);
        }
        j["unclassedPositions"] = std::move(pos);
    }
    j["notes"] = ojson::array();
    for (const auto& n : r.notes) j["notes"].push_back(to_json(n));
    return j;
}

ojson to_json(const MethodDescriptor& d) {
    ojson j;
    j["methodId"] = d.method_id;
    j["displayName"] = d.display_name;
    j["category"] = to_string(d.category);
    j["shortDescription"] = d.short_description;
    j["longDescription"] = d.long_description;
    j["parameters"] = ojson::array();
    for (const auto& p : d.parameters)
        j["parameters"].push_back({{"name", p.name}, {"type", p.type}, {"default", p.default_value}});
    return j;
}

ojson to_json(const ConsensusMatrix& m) {
    ojson j;
    j["methods"] = m.methods;
    ojson features = ojson::object();
    for (std::size_t i = 0; i < m.feature_ids.size(); ++i)
        features[m.feature_ids[i]] = {{"bins", m.bins[i]},
                                      {"majorityBin", m.majority_bin[i]},
                                      {"majorityFrequency", m.majority_frequency[i]}};
    j["features"] = std::move(features);
    return j;
}

ojson to_json(const PinConstraint& pin) {
    ojson j;
    if (pin.feature_id) j["featureId"] = *pin.feature_id;
    if (pin.value) j["value"] = *pin.value;
    j["targetBin"] = pin.target_bin;
    return j;
}

PinConstraint pin_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidPin, "a pin must be an object");
    PinConstraint pin;
    if (const auto* f = field(j, "featureId")) {
        if (!f->is_string()) throw Error(ErrorCode::InvalidPin, "featureId must be a string");
        pin.feature_id = f->get<std::string>();
    }
    if (const auto* v = field(j, "value")) {
        if (!v->is_number()) throw Error(ErrorCode::InvalidPin, "value must be a number");
        pin.value = v->get<double>();
    }
    const auto* t = field(j, "targetBin");
    if (!t || !t->is_number_integer()) throw Error(ErrorCode::InvalidPin, "targetBin must be an integer");
    pin.target_bin = t->get<int>();
    if (!pin.feature_id && !pin.value) throw Error(ErrorCode::InvalidPin, "a pin needs featureId or value");
    return pin;
}

ojson to_json(const CustomMethod& m) {
    ojson log = ojson::array();
    for (const auto& p : m.provenance.constraint_log) log.push_back(to_json(p));
    return ojson{{"name", m.name},
                 {"extents", m.extents},
                 {"provenance", {{"seedMethodId", m.provenance.seed_method_id}, {"constraintLog", log}}},
                 {"createdAt", m.created_at}};
}

CustomMethod custom_method_from_json(const nlohmann::json& j) {
    CustomMethod m;
    m.name = j.at("name").get<std::string>();
    m.extents = j.at("extents").get<std::vector<double>>();
    if (const auto* p = field(j, "provenance")) {
        if (const auto* seed = field(*p, "seedMethodId")) m.provenance.seed_method_id = seed->get<std::string>();
        if (const auto* log = field(*p, "constraintLog"))
            for (const auto& pin : *log) m.provenance.constraint_log.push_back(pin_from_json(pin));
    }
    if (const auto* c = field(j, "createdAt")) m.created_at = c->get<std::string>();
    return m;
}

ojson to_json(const RuleViolation& v) {
    ojson j{{"rule", to_string(v.kind)}};
    if (v.bin) j["bin"] = *v.bin;
    j["message"] = v.message;
    return j;
}

ojson to_json(const Profile& p) {
    ojson j;
    j["count"] = p.count;
    j["validCount"] = p.valid_count;
    j["missingCount"] = p.missing_count;
    j["showMissing"] = p.show_missing;
    j["min"] = p.min;
    j["max"] = p.max;
    j["mean"] = p.mean;
    j["median"] = p.median;
    j["stdDev"] = p.std_dev;
    j["skewness"] = p.skewness;
    j["histogram"] = {{"edges", p.histogram.edges}, {"counts", p.histogram.counts}};
    j["kde"] = {{"bandwidth", p.kde.bandwidth}, {"grid", p.kde.grid}, {"density", p.kde.density}};
    return j;
}

ojson to_json(const JoinReport& r) {
    return ojson{{"matched", r.matched},
                 {"unmatchedGeometryIds", r.unmatched_geometry_ids},
                 {"unmatchedAttributeIds", r.unmatched_attribute_ids}};
}

ojson to_json(const PaintResult& r) {
    ojson j;
    j["extents"] = r.extents;
    j["moved"] = r.moved;
    j["warning"] = misuse_warning();
    j["notes"] = ojson::array();
    for (const auto& n : r.notes) j["notes"].push_back(to_json(n));
    return j;
}

ojson to_json(const Palette& p) {
    ojson j;
    j["name"] = p.name();
    j["scaleType"] = to_string(p.scale_type());
    j["flags"] = {{"web", p.flags().web}, {"colorblind", p.flags().colorblind}, {"print", p.flags().print}};
    j["interpolated"] = p.interpolated();
    j["capacity"] = p.capacity();
    j["nodataColor"] = p.nodata_color();
    j["preview"] = p.colors(std::min(p.capacity(), 7));
    return j;
}

ojson error_json(ErrorCode code, const std::string& message, const std::string& details) {
    return ojson{{"code", to_string(code)}, {"message", message}, {"details", details}};
}

}  // namespace binx
