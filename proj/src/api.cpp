#include "binx/api.hpp"

#include <charconv>
#include <future>
#include <sstream>

#include "binx/consensus.hpp"
#include "binx/error.hpp"
#include "binx/profile.hpp"
#include "method_support.hpp"

namespace binx::api {

namespace {

std::string guess_id_property(std::string_view geojson, const std::string& id_column) {
    try {
        const auto doc = nlohmann::json::parse(geojson);
        const auto& features = doc.at("features");
        if (features.empty()) return id_column;
        const auto& first = features.front();
        const auto props = first.find("properties");
        if (props != first.end() && props->is_object() && props->contains(id_column)) return id_column;
        if (first.contains("id")) return {};
    } catch (const nlohmann::json::exception&) {
        // parse_geometry reports the real problem
    }
    return id_column;
}

ojson error_slot(const Error& e) { return {{"error", error_json(e.code(), e.message(), e.details())}}; }

ojson custom_descriptor(const CustomMethod& m) {
    ojson j;
    j["methodId"] = "custom:" + m.name;
    j["displayName"] = m.name;
    j["category"] = "human_centered";
    j["shortDescription"] = "Saved breaks derived from " + m.provenance.seed_method_id + ".\n" +
                            std::to_string(m.extents.size() - 1) + " bins, reused as fixed extents.";
    j["longDescription"] = "A user-defined method created on " + m.created_at + " from " +
                           m.provenance.seed_method_id + " with " +
                           std::to_string(m.provenance.constraint_log.size()) + " paint constraint(s).";
    j["parameters"] = ojson::array();
    return j;
}

}  // namespace

Dataset load_dataset(std::string_view csv, const std::string& id_column, std::optional<std::string_view> geojson,
                     std::string id_property) {
    auto attributes = parse_attributes(csv, id_column);
    if (!geojson) return join(std::move(attributes), std::nullopt);
    if (id_property.empty()) id_property = guess_id_property(*geojson, id_column);
    return join(std::move(attributes), parse_geometry(*geojson, id_property));
}

std::string resolve_attribute(const Dataset& dataset, const std::optional<std::string>& attribute) {
    if (attribute) {
        if (!dataset.attributes().has_column(*attribute) || *attribute == dataset.attributes().id_column())
            throw Error(ErrorCode::UnknownAttribute, "no attribute named '" + *attribute + "'", *attribute);
        return *attribute;
    }
    const auto numeric = dataset.attributes().numeric_columns();
    if (numeric.empty()) throw Error(ErrorCode::UnknownAttribute, "the table has no numeric attribute");
    return numeric.front();
}

ojson profile(const FeatureSeries& series, int histogram_bins, bool show_missing) {
    ojson j;
    j["attribute"] = series.attribute_name();
    j.update(to_json(binx::profile(series, histogram_bins, show_missing)));
    return j;
}

ojson dataset_summary(const std::string& dataset_id, const Dataset& dataset, const std::string& attribute) {
    ojson j;
    j["datasetId"] = dataset_id;
    j["joinReport"] = to_json(dataset.join_report());
    j["attributes"] = dataset.attributes().numeric_columns();
    j["profile"] = api::profile(dataset.series(attribute), kDefaultHistogramBins, true);
    return j;
}

ojson methods(const CustomMethodStore* customs) {
    ojson list = ojson::array();
    for (const auto& d : method_catalog()) list.push_back(to_json(d));
    if (customs)
        for (const auto& m : customs->list()) list.push_back(custom_descriptor(m));
    return {{"methods", std::move(list)}};
}

ojson bin(const FeatureSeries& series, const MethodSpec& spec, const CustomMethodSource* customs) {
    const auto result = run_method(series, spec, customs);
    auto j = to_json(result);
    j["lint"] = ojson::array();
    for (const auto& v : validate_rules(result, series)) j["lint"].push_back(to_json(v));
    return j;
}

ojson bin_all(const FeatureSeries& series, int k, const CustomMethodSource* customs) {
    series.require_valid();
    std::vector<std::future<ojson>> runs;
    for (const auto m : builtin_methods()) {
        runs.push_back(std::async(std::launch::async, [&series, m, k, customs] {
            try {
                return bin(series, MethodSpec::of(m, k), customs);
            } catch (const Error& e) {
                return error_slot(e);
            }
        }));
    }
    ojson results = ojson::object();
    std::size_t i = 0;
    for (const auto m : builtin_methods()) results[std::string(method_id(m))] = runs[i++].get();
    return {{"binCount", k}, {"results", std::move(results)}};
}

ojson compare(const FeatureSeries& series, const std::vector<MethodSpec>& specs, const CustomMethodSource* customs) {
    ojson rows = ojson::array();
    for (const auto& spec : specs) {
        const auto r = run_method(series, spec, customs);
        ojson row;
        row["method"] = method_id(r.method);
        row["binCount"] = r.bin_count();
        row["extents"] = r.extents;
        std::vector<double> widths;
        for (std::size_t b = 1; b < r.extents.size(); ++b) widths.push_back(r.extents[b] - r.extents[b - 1]);
        row["widths"] = widths;
        row["binSizes"] = r.bin_sizes;
        rows.push_back(std::move(row));
    }
    return {{"rows", std::move(rows)}};
}

std::string compare_csv(const ojson& table) {
    std::ostringstream out;
    out << "method,binCount,bin,lower,upper,width,size\n";
    for (const auto& row : table.at("rows")) {
        const auto& e = row.at("extents");
        for (std::size_t b = 0; b + 1 < e.size(); ++b) {
            out << row.at("method").get<std::string>() << ',' << row.at("binCount").get<int>() << ',' << b + 1 << ','
                << detail::format_number(e[b].get<double>()) << ',' << detail::format_number(e[b + 1].get<double>())
                << ',' << detail::format_number(row.at("widths")[b].get<double>()) << ','
                << row.at("binSizes")[b].get<std::size_t>() << '\n';
        }
    }
    return out.str();
}

ojson combine(const FeatureSeries& series, std::vector<std::string> members, int k,
              const CustomMethodSource* customs) {
    if (members.empty()) members = default_consensus_members(k);
    const auto specs = member_specs(members, k);
    auto matrix = build_matrix(series, specs, k, customs);
    const auto consensus = resiliency(series, specs, k, customs);
    ojson j;
    j["binCount"] = k;
    j["matrix"] = to_json(matrix);
    j["resiliency"] = to_json(consensus);
    return j;
}

ojson paint(const std::vector<double>& extents, const std::vector<PinConstraint>& pins, const FeatureSeries& series) {
    auto j = to_json(apply_pins(extents, pins, series));
    ojson constraints = ojson::array();
    for (const auto& p : pins) constraints.push_back(to_json(p));
    j["constraints"] = std::move(constraints);
    return j;
}

PinConstraint parse_pin(std::string_view text) {
    const auto bad = [&] {
        return Error(ErrorCode::InvalidPin, "pin '" + std::string(text) + "' is not value:bin or id:<feature>:bin",
                     std::string(text));
    };
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0) throw bad();
    const auto bin_text = text.substr(colon + 1);
    int bin = 0;
    const auto [p, ec] = std::from_chars(bin_text.data(), bin_text.data() + bin_text.size(), bin);
    if (ec != std::errc() || p != bin_text.data() + bin_text.size()) throw bad();

    PinConstraint pin;
    pin.target_bin = bin;
    const auto head = text.substr(0, colon);
    if (head.starts_with("id:")) {
        if (head.size() == 3) throw bad();
        pin.feature_id = std::string(head.substr(3));
        return pin;
    }
    double v = 0.0;
    const auto [q, ec2] = std::from_chars(head.data(), head.data() + head.size(), v);
    if (ec2 != std::errc() || q != head.data() + head.size()) throw bad();
    pin.value = v;
    return pin;
}

std::optional<std::string> fixed_count_warning(const MethodSpec& spec, bool bins_given) {
    if (!bins_given) return std::nullopt;
    switch (spec.method) {
        case Method::Percentile:
        case Method::BoxPlot:
            return std::string(method_id(spec.method)) + " always uses 6 bins; --bins is ignored";
        case Method::Unclassed: return std::string("unclassed has no bins; --bins is ignored");
        case Method::DefinedInterval:
        case Method::HeadTailBreaks:
        case Method::ManualInterval:
        case Method::Custom:
            return std::string(method_id(spec)) + " derives its own bin count; --bins is ignored";
        default: return std::nullopt;
    }
}

int http_status(ErrorCode code) {
    switch (kind_of(code)) {
        case ErrorKind::Input: return 400;
        case ErrorKind::Conflict: return 409;
        case ErrorKind::Infeasible: return 422;
        case ErrorKind::Internal: return 500;
    }
    return 500;
}

int exit_code(ErrorCode code) {
    switch (kind_of(code)) {
        case ErrorKind::Input:
        case ErrorKind::Conflict: return 2;
        case ErrorKind::Infeasible: return 3;
        case ErrorKind::Internal: return 1;
    }
    return 1;
}

}  // namespace binx::api
