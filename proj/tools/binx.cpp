// binx: batch front-end over the binning engine.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "binx/api.hpp"
#include "binx/consensus.hpp"
#include "binx/error.hpp"

namespace fs = std::filesystem;
using namespace binx;

namespace {

struct Input {
    std::string data;
    std::string geo;
    std::string id_col = "id";
    std::string geo_id;
    std::string value_col;
};

struct MethodFlags {
    std::string method = "equal_interval";
    int bins = kDefaultBinCount;
    double interval_size = 1.0;
    double iqr_factor = 1.5;
    double threshold = 0.4;
    double growth = 2.0;
    std::string std_step = "whole";
    std::string breaks;
    std::string members;
    std::string store;
};

struct Options {
    Input in;
    MethodFlags m;
    std::string out;
    std::string format;
    std::string config;
    bool all = false;
    int hist_bins = kDefaultHistogramBins;
    bool hide_missing = false;
    std::vector<std::string> pins;
    std::string save_as;
    std::string palette{kDefaultPalette};
    bool reverse = false;
    std::string geometry_url;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
}

struct Loaded {
    Dataset dataset;
    FeatureSeries series;
};

Loaded load(const Input& in) {
    if (in.data.empty()) throw Error(ErrorCode::InvalidParameter, "--data is required");
    const auto csv = read_file(in.data);
    std::optional<std::string> geo;
    if (!in.geo.empty()) geo = read_file(in.geo);
    auto d = api::load_dataset(csv, in.id_col, geo ? std::optional<std::string_view>(*geo) : std::nullopt, in.geo_id);
    const auto attr = api::resolve_attribute(d, in.value_col.empty() ? std::nullopt : std::optional(in.value_col));
    auto s = d.series(attr);
    return {std::move(d), std::move(s)};
}

std::vector<double> read_breaks(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') return parse_breaks(read_file(arg.substr(1)));
    std::vector<double> out;
    for (const auto& item : split_list(arg)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidParameter, "'" + item + "' is not a number in --breaks");
        }
    }
    return out;
}

MethodSpec spec_from(const MethodFlags& m, const std::string& method) {
    nlohmann::json j;
    j["method"] = method;
    j["binCount"] = m.bins;
    j["definedIntervalSize"] = m.interval_size;
    j["iqrFactor"] = m.iqr_factor;
    j["headTailThreshold"] = m.threshold;
    j["expGrowth"] = m.growth;
    j["stdDevStep"] = m.std_step;
    if (!m.breaks.empty()) j["manualBreaks"] = read_breaks(m.breaks);
    if (!m.members.empty()) j["memberMethods"] = split_list(m.members);
    return method_spec_from_json(j);
}

std::unique_ptr<CustomMethodStore> open_store(const MethodFlags& m) {
    return m.store.empty() ? std::make_unique<CustomMethodStore>() : std::make_unique<CustomMethodStore>(m.store);
}

std::string profile_table(const ojson& p) {
    std::ostringstream out;
    out << std::setprecision(17);
    const auto row = [&](const char* label, const ojson& v) { out << std::left << std::setw(14) << label << v << '\n'; };
    out << "attribute     " << p["attribute"].get<std::string>() << '\n';
    row("count", p["count"]);
    row("valid", p["validCount"]);
    if (p["showMissing"].get<bool>()) row("missing", p["missingCount"]);
    for (const char* k : {"min", "max", "mean", "median", "stdDev", "skewness"}) row(k, p[k]);
    row("bandwidth", p["kde"]["bandwidth"]);
    out << "histogram\n";
    const auto& e = p["histogram"]["edges"];
    const auto& c = p["histogram"]["counts"];
    for (std::size_t i = 0; i < c.size(); ++i) out << "  [" << e[i] << ", " << e[i + 1] << ")  " << c[i] << '\n';
    return out.str();
}

void add_input(CLI::App* cmd, Options& o) {
    cmd->add_option("--data", o.in.data, "attribute CSV");
    cmd->add_option("--geo", o.in.geo, "GeoJSON geometry");
    cmd->add_option("--id-col", o.in.id_col, "id column in the CSV")->capture_default_str();
    cmd->add_option("--geo-id", o.in.geo_id, "id property in the GeoJSON (defaults to --id-col, then feature id)");
    cmd->add_option("--value-col", o.in.value_col, "attribute to bin (defaults to the first numeric column)");
    cmd->add_option("--out", o.out, "output file or directory");
    cmd->add_option("--config", o.config, "JSON file with default flag values");
}

void add_method(CLI::App* cmd, Options& o) {
    cmd->add_option("--method", o.m.method, "method id, or custom:<name>")->capture_default_str();
    cmd->add_option("--bins", o.m.bins, "bin count")->capture_default_str();
    cmd->add_option("--interval-size", o.m.interval_size, "defined_interval width")->capture_default_str();
    cmd->add_option("--iqr-factor", o.m.iqr_factor, "box_plot fence factor")->capture_default_str();
    cmd->add_option("--threshold", o.m.threshold, "head_tail_breaks head fraction")->capture_default_str();
    cmd->add_option("--growth", o.m.growth, "exponential_bin_sizes growth")->capture_default_str();
    cmd->add_option("--std-step", o.m.std_step, "std_deviation step: whole or half")->capture_default_str();
    cmd->add_option("--breaks", o.m.breaks, "manual breaks: comma list or @breaks.json");
    cmd->add_option("--members", o.m.members, "comma-separated member method ids");
    cmd->add_option("--store", o.m.store, "custom method store file");
}

// Splices values from --config in front of the user's flags, skipping any
// flag that was given explicitly.
std::vector<std::string> with_config(std::vector<std::string> args) {
    std::string path;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (!a.starts_with("--")) continue;
        const auto eq = a.find('=');
        const auto name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
        given.insert(name);
        if (name == "config") path = eq == std::string::npos ? (i + 1 < args.size() ? args[i + 1] : "") : a.substr(eq + 1);
    }
    if (path.empty() || args.empty()) return args;
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidParameter, "config " + path + " is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw Error(ErrorCode::InvalidParameter, "config must be a JSON object");
    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.items()) {
        if (given.count(key)) continue;
        const auto flag = "--" + key;
        const auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        if (value.is_boolean()) {
            if (value.get<bool>()) extra.push_back(flag);
        } else if (value.is_array()) {
            for (const auto& v : value) extra.insert(extra.end(), {flag, text(v)});
        } else {
            extra.insert(extra.end(), {flag, text(value)});
        }
    }
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    return args;
}

int run(int argc, char** argv) {
    CLI::App app{"binx: choropleth data binning", "binx"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    Options o;

    auto* profile_cmd = app.add_subcommand("profile", "summary statistics, histogram and KDE");
    add_input(profile_cmd, o);
    profile_cmd->add_option("--hist-bins", o.hist_bins, "histogram bins")->capture_default_str();
    profile_cmd->add_flag("--hide-missing", o.hide_missing, "omit the missing count from the report");
    profile_cmd->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));

    auto* bin_cmd = app.add_subcommand("bin", "run one method, or all sixteen with --all");
    add_input(bin_cmd, o);
    add_method(bin_cmd, o);
    bin_cmd->add_flag("--all", o.all, "write one result per built-in method into --out");
    bin_cmd->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

    auto* compare_cmd = app.add_subcommand("compare", "bin count, widths and sizes per method");
    add_input(compare_cmd, o);
    add_method(compare_cmd, o);
    compare_cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* combine_cmd = app.add_subcommand("combine", "consensus matrix and resiliency");
    add_input(combine_cmd, o);
    add_method(combine_cmd, o);
    combine_cmd->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

    auto* paint_cmd = app.add_subcommand("paint", "move breaks so pinned values land in chosen bins");
    add_input(paint_cmd, o);
    add_method(paint_cmd, o);
    paint_cmd->add_option("--pin", o.pins, "value:bin or id:<feature>:bin (repeatable)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    paint_cmd->add_option("--save-as", o.save_as, "save the result as a custom method in --store");
    paint_cmd->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

    auto* export_cmd = app.add_subcommand("export", "write breaks, sizes, mapspec, legend_svg, code_stub");
    add_input(export_cmd, o);
    add_method(export_cmd, o);
    export_cmd->add_option("--format", o.format, "comma-separated targets (default breaks,mapspec,legend_svg)");
    export_cmd->add_option("--palette", o.palette, "palette name")->capture_default_str();
    export_cmd->add_flag("--reverse", o.reverse, "reverse the palette");
    export_cmd->add_option("--geometry-url", o.geometry_url, "reference geometry by URL instead of inlining it");

    std::vector<std::string> args(argv + 1, argv + argc);
    args = with_config(std::move(args));
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto bins_given = [](CLI::App* cmd) { return cmd->count("--bins") > 0; };

    if (*profile_cmd) {
        const auto l = load(o.in);
        const auto doc = api::profile(l.series, o.hist_bins, !o.hide_missing);
        write_output(o.out, o.format == "table" ? profile_table(doc) : dump(doc));
        return 0;
    }

    auto store = open_store(o.m);

    if (*bin_cmd) {
        const auto l = load(o.in);
        if (o.all) {
            const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
            const auto doc = api::bin_all(l.series, o.m.bins, store.get());
            for (const auto& [id, result] : doc["results"].items()) write_output((dir / (id + ".json")).string(), dump(result));
            return 0;
        }
        const auto spec = spec_from(o.m, o.m.method);
        if (const auto w = api::fixed_count_warning(spec, bins_given(bin_cmd))) std::cerr << "warning: " << *w << '\n';
        write_output(o.out, dump(api::bin(l.series, spec, store.get())));
        return 0;
    }

    if (*compare_cmd) {
        const auto l = load(o.in);
        auto ids = split_list(o.m.method);
        if (compare_cmd->count("--method") == 0) ids = default_consensus_members(o.m.bins);
        std::vector<MethodSpec> specs;
        for (const auto& id : ids) specs.push_back(spec_from(o.m, id));
        const auto doc = api::compare(l.series, specs, store.get());
        write_output(o.out, o.format == "csv" ? api::compare_csv(doc) : dump(doc));
        return 0;
    }

    if (*combine_cmd) {
        const auto l = load(o.in);
        const int k = bins_given(combine_cmd) ? o.m.bins : 6;
        write_output(o.out, dump(api::combine(l.series, split_list(o.m.members), k, store.get())));
        return 0;
    }

    if (*paint_cmd) {
        const auto l = load(o.in);
        std::vector<double> extents;
        std::string seed;
        if (!o.m.breaks.empty()) {
            extents = read_breaks(o.m.breaks);
            seed = "manual_interval";
        } else {
            const auto r = run_method(l.series, spec_from(o.m, o.m.method), store.get());
            extents = r.extents;
            seed = method_id(r.method);
        }
        std::vector<PinConstraint> pins;
        for (const auto& p : o.pins) pins.push_back(api::parse_pin(p));
        std::cerr << "warning: " << misuse_warning() << '\n';
        const auto doc = api::paint(extents, pins, l.series);
        if (!o.save_as.empty()) {
            if (o.m.store.empty()) throw Error(ErrorCode::InvalidParameter, "--save-as needs --store");
            store->save(o.save_as, doc["extents"].get<std::vector<double>>(), {seed, pins});
        }
        write_output(o.out, dump(doc));
        return 0;
    }

    if (*export_cmd) {
        const auto l = load(o.in);
        const auto result = run_method(l.series, spec_from(o.m, o.m.method), store.get());
        std::vector<ExportTarget> targets;
        for (const auto& t : split_list(o.format.empty() ? "breaks,mapspec,legend_svg" : o.format))
            targets.push_back(parse_export_target(t));
        ExportOptions eo;
        eo.palette = PaletteCatalog().get(o.palette);
        eo.reversed = o.reverse;
        eo.series = &l.series;
        if (l.dataset.geometry()) eo.geometry = &*l.dataset.geometry();
        eo.geometry_url = o.geometry_url;
        const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
        for (const auto t : targets) {
            const auto path = (dir / default_file_name(t)).string();
            write_output(path, export_result(result, t, eo));
            std::cerr << "wrote " << path << '\n';
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "binx: " << e.what() << '\n';
        return api::exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "binx: " << e.what() << '\n';
        return 1;
    }
}
