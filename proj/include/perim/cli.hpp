#pragma once

// Command-line front end. run() takes the arguments after the program name and
// writes results to `out`, diagnostics to `err`.
// Exit codes: 0 ok, 1 a checked relation failed, 2 usage or domain error.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perim/bijections.hpp"
#include "perim/core.hpp"
#include "perim/error.hpp"
#include "perim/family.hpp"
#include "perim/io.hpp"
#include "perim/verify.hpp"

namespace perim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct Args {
    std::string command;
    std::string n, m, k;  // "a" or "a..b"
    std::string residues;
    std::vector<std::string> families;
    std::string map;
    std::string input;
    std::string format = "text";
    int workers = 1;
    int cap = kDefaultCap;
    int map_cap = 20;
    bool trace = false;
    bool timing = false;
    std::vector<std::string> suites;
    std::uint64_t index = 0;
    bool index_given = false;
    std::string style = "young";
    std::string sort = "composition";
    std::string policy = "all";
};

// ---------------------------------------------------------------------------
// Value parsing.

inline IntRange parse_range(const std::string& text, const char* what) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = detail::parse_int(text, what);
        return {v, v};
    }
    IntRange r{detail::parse_int(std::string_view(text).substr(0, dots), what),
               detail::parse_int(std::string_view(text).substr(dots + 2), what)};
    if (r.first > r.last) throw domain_error(std::string("empty range for ") + what + ": " + text);
    return r;
}

inline std::optional<IntRange> optional_range(const std::string& text, const char* what) {
    if (text.empty()) return std::nullopt;
    return parse_range(text, what);
}

inline std::optional<int> single_value(const std::string& text, const char* what) {
    if (text.empty()) return std::nullopt;
    const IntRange r = parse_range(text, what);
    if (r.first != r.last) throw domain_error(std::string("--") + what + " takes a single value here");
    return r.first;
}

inline std::vector<int> parse_list(const std::string& text, const char* what) {
    std::vector<int> out;
    if (text.empty()) return out;
    for (auto token : detail::split(text, ',')) out.push_back(detail::parse_int(token, what));
    return out;
}

inline Sort parse_sort(const std::string& text) {
    if (text == "composition") return Sort::composition;
    if (text == "partition") return Sort::partition;
    throw domain_error("unknown sort '" + text + "'");
}

inline Object parse_object(const std::string& text, Sort sort) {
    if (text.empty()) throw domain_error("--input is required");
    return make_object(sort, parse_list(text, "input"));
}

inline OutputFormat parse_format(const std::string& text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    return OutputFormat::text;
}

// ---------------------------------------------------------------------------
// Subcommands.

// Expands each --family over the --n/--m/--k ranges. Keys written in the
// family text win over the flags; flags for parameters a family does not take
// are ignored for that family.
inline std::vector<FamilySpec> expand_families(const Args& a) {
    if (a.families.empty()) throw domain_error("--family is required");
    const auto ns = optional_range(a.n, "n");
    const auto ms = optional_range(a.m, "m");
    const auto ks = optional_range(a.k, "k");
    const auto residues = parse_list(a.residues, "R");

    std::vector<FamilySpec> parsed;
    for (const auto& text : a.families) parsed.push_back(parse_family_spec(text));

    auto values = [](const std::optional<int>& fixed, const std::optional<IntRange>& range) {
        std::vector<std::optional<int>> out;
        if (fixed) return std::vector<std::optional<int>>{fixed};
        if (!range) return std::vector<std::optional<int>>{std::nullopt};
        for (int v = range->first; v <= range->last; ++v) out.push_back(v);
        return out;
    };

    std::vector<FamilySpec> out;
    const auto n_values = values(std::nullopt, ns);
    for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
        for (const auto& base : parsed) {
            if (base.n && ni > 0) continue;  // n fixed in the text: emit once
            const FamilyTraits& t = traits(base.kind);
            for (const auto& m : t.min_m > 0 ? values(base.m, ms) : std::vector<std::optional<int>>{base.m}) {
                for (const auto& k : t.uses_k ? values(base.k, ks) : std::vector<std::optional<int>>{base.k}) {
                    FamilySpec spec = base;
                    if (!spec.n) spec.n = n_values[ni];
                    spec.m = m;
                    spec.k = k;
                    if (t.uses_residues && spec.residues.empty()) spec.residues = residues;
                    validate(spec);
                    out.push_back(std::move(spec));
                }
            }
        }
    }
    return out;
}

inline int run_count(const Args& a, std::ostream& out) {
    const EnumerationOptions opts{a.cap, a.workers};
    const auto specs = expand_families(a);
    std::vector<std::uint64_t> counts;
    for (const auto& spec : specs) counts.push_back(count_family(spec, opts));

    switch (parse_format(a.format)) {
        case OutputFormat::csv:
            out << kCountCsvHeader;
            for (std::size_t i = 0; i < specs.size(); ++i) out << count_csv_row(specs[i], counts[i]);
            break;
        case OutputFormat::json: {
            json rows = json::array();
            for (std::size_t i = 0; i < specs.size(); ++i) {
                json row{{"family", to_string(specs[i])}, {"n", *specs[i].n}};
                row["m"] = specs[i].m ? json(*specs[i].m) : json(nullptr);
                row["k"] = specs[i].k ? json(*specs[i].k) : json(nullptr);
                row["count"] = counts[i];
                rows.push_back(std::move(row));
            }
            out << dump(json{{"counts", std::move(rows)}});
            break;
        }
        case OutputFormat::text:
            if (specs.size() == 1) {
                out << counts[0] << '\n';
            } else {
                for (std::size_t i = 0; i < specs.size(); ++i) out << to_string(specs[i]) << ' ' << counts[i] << '\n';
            }
            break;
    }
    return kExitOk;
}

inline int run_enumerate(const Args& a, std::ostream& out) {
    if (a.families.size() != 1) throw domain_error("enumerate takes exactly one --family");
    FamilySpec spec = parse_family_spec(a.families[0]);
    const FamilyTraits& t = traits(spec.kind);
    if (!spec.n) spec.n = single_value(a.n, "n");
    if (!spec.m && t.min_m > 0) spec.m = single_value(a.m, "m");
    if (!spec.k && t.uses_k) spec.k = single_value(a.k, "k");
    if (spec.residues.empty() && t.uses_residues) spec.residues = parse_list(a.residues, "R");
    validate(spec);
    const auto members = enumerate_family_ranked(spec, {a.cap, a.workers});

    switch (parse_format(a.format)) {
        case OutputFormat::csv:
            out << kEnumerateCsvHeader;
            for (const auto& r : members) out << r.rank.index << ',' << csv_quote(to_string(r.object)) << '\n';
            break;
        case OutputFormat::json: {
            json list = json::array();
            for (const auto& r : members)
                list.push_back(json{{"index", r.rank.index}, {"parts", parts_json(parts_of(r.object))}});
            out << dump(json{{"family", to_string(spec)},
                             {"sort", sort_name(family_sort(spec))},
                             {"count", members.size()},
                             {"members", std::move(list)}});
            break;
        }
        case OutputFormat::text:
            for (const auto& r : members) out << to_string(r.object) << '\n';
            break;
    }
    return kExitOk;
}

inline int run_map(const Args& a, std::ostream& out) {
    if (a.map.empty()) throw domain_error("--map is required");
    const auto id = map_id_from_name(a.map);
    if (!id) throw domain_error("unknown map '" + a.map + "'");
    const MapTraits& t = traits(*id);
    MapSpec spec{*id, 0, 0, {}};
    if (t.min_m > 0) {
        const auto m = single_value(a.m, "m");
        if (!m) throw domain_error(std::string(t.name) + " needs --m");
        spec.m = *m;
    }
    if (t.uses_k) {
        const auto k = single_value(a.k, "k");
        if (!k) throw domain_error(std::string(t.name) + " needs --k");
        spec.k = *k;
    }
    if (t.uses_residues) {
        spec.residues = parse_list(a.residues, "R");
        if (spec.residues.empty()) throw domain_error(std::string(t.name) + " needs --R");
    }
    if (a.trace && *id != MapId::phi) throw domain_error("--trace applies to --map phi only");

    const Object input = parse_object(a.input, t.input);
    std::optional<PhiTrace> trace;
    std::optional<Object> image;
    if (a.trace) {
        auto result = phi_traced(std::get<Composition>(input), spec.m);
        trace = std::move(result.trace);
        image = std::move(result.image);
    } else {
        image = apply_map(spec, input);
    }

    switch (parse_format(a.format)) {
        case OutputFormat::json: {
            json j{{"map", to_string(spec)}, {"input", to_json(input)}};
            j["output"] = image ? to_json(*image) : json(nullptr);
            if (trace) {
                json steps = json::array();
                for (const auto& s : trace->steps) steps.push_back(to_json(s));
                j["trace"] = std::move(steps);
            }
            out << dump(j);
            break;
        }
        case OutputFormat::csv:
            out << "input,output\n"
                << csv_quote(to_string(input)) << ',' << (image ? csv_quote(to_string(*image)) : "") << '\n';
            break;
        case OutputFormat::text:
            if (trace) out << trace_text(*trace) << "result: ";
            out << (image ? to_string(*image) : "absent") << '\n';
            break;
    }
    return kExitOk;
}

inline SweepConfig sweep_config(const Args& a) {
    SweepConfig config;
    config.n = optional_range(a.n, "n");
    config.m = optional_range(a.m, "m");
    config.k = optional_range(a.k, "k");
    if (a.policy == "singletons") {
        config.residues = ResiduePolicy::singletons;
    } else if (a.policy != "all") {
        throw domain_error("unknown residue policy '" + a.policy + "'");
    }
    if (!a.residues.empty()) {
        auto r = parse_list(a.residues, "R");
        if (!std::is_sorted(r.begin(), r.end()) || std::adjacent_find(r.begin(), r.end()) != r.end() || r.front() < 1)
            throw domain_error("R must be strictly ascending positive residues");
        config.fixed_residues = std::move(r);
    }
    config.workers = a.workers;
    config.cap = a.cap;
    config.map_cap = a.map_cap;
    return config;
}

// verify and sweep run the same harness. A single-point verify prints the
// full report; otherwise one line per point.
inline int run_verify(const Args& a, std::ostream& out, bool detailed_single) {
    const SweepConfig config = sweep_config(a);
    const std::vector<std::string> suites = a.suites.empty() ? std::vector<std::string>{"all"} : a.suites;
    const SweepReport report = sweep(config, suites);
    const ReportFormat fmt{a.timing};
    const bool single = detailed_single && report.points() == 1;
    const TheoremReport* only = nullptr;
    if (single)
        for (const auto& s : report.suites)
            if (!s.reports.empty()) only = &s.reports.front();

    switch (parse_format(a.format)) {
        case OutputFormat::json:
            out << dump(only ? to_json(*only, fmt) : to_json(report, fmt));
            break;
        case OutputFormat::csv:
            out << to_csv(report);
            break;
        case OutputFormat::text:
            out << (only ? to_text(*only, fmt) : to_text(report, fmt));
            break;
    }
    return report.passed() ? kExitOk : kExitFailed;
}

inline int run_render(const Args& a, std::ostream& out) {
    const Object object = parse_object(a.input, parse_sort(a.sort));
    DiagramStyle style;
    int m = 0;
    if (a.style == "young") {
        style = DiagramStyle::young;
    } else if (a.style == "modular") {
        style = DiagramStyle::modular;
        const auto mv = single_value(a.m, "m");
        if (!mv) throw domain_error("modular style needs --m");
        m = *mv;
    } else {
        throw domain_error("unknown style '" + a.style + "'");
    }
    const RenderedDiagram d = render(object, style, m);
    if (parse_format(a.format) == OutputFormat::json) {
        json j{{"input", to_json(object)}, {"style", a.style}};
        if (style == DiagramStyle::modular) j["m"] = m;
        j["lines"] = d.lines;
        out << dump(j);
    } else {
        out << d.str();
    }
    return kExitOk;
}

inline int run_rank(const Args& a, std::ostream& out) {
    const Object object = parse_object(a.input, parse_sort(a.sort));
    const CompositionIndex r = rank_of(object);
    if (parse_format(a.format) == OutputFormat::json) {
        out << dump(json{{"input", to_json(object)}, {"rank", to_json(r)}});
    } else {
        out << r.index << '\n';
    }
    return kExitOk;
}

inline int run_unrank(const Args& a, std::ostream& out) {
    const auto n = single_value(a.n, "n");
    if (!n) throw domain_error("--n is required");
    if (!a.index_given) throw domain_error("--index is required");
    const Composition c = unrank_composition(*n, a.index);
    const Object object = parse_sort(a.sort) == Sort::composition ? Object(c) : Object(pi(c));
    if (parse_format(a.format) == OutputFormat::json) {
        out << dump(json{{"rank", to_json(CompositionIndex{*n, a.index})}, {"object", to_json(object)}});
    } else {
        out << to_string(object) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exhaustive checks for perimeter partition identities", "perim"};
    app.require_subcommand(1, 1);
    Args a;

    const auto formats = CLI::IsMember({"text", "json", "csv"});
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", a.format, "text, json or csv")->check(formats);
        sub->add_option("--cap", a.cap, "largest substrate size to enumerate")->check(CLI::Range(1, kMaxRankableSize));
        sub->add_option("--workers", a.workers, "worker threads")->check(CLI::Range(1, 256));
    };
    auto params = [&](CLI::App* sub) {
        sub->add_option("--n", a.n, "size, or a range a..b");
        sub->add_option("--m", a.m, "modulus, or a range a..b");
        sub->add_option("--k", a.k, "k parameter, or a range a..b");
        sub->add_option("--R", a.residues, "residues, comma separated");
    };

    auto* count = app.add_subcommand("count", "count members of one or more families");
    common(count);
    params(count);
    count->add_option("--family", a.families, "family, e.g. h:n=12,m=3 (repeatable)");

    auto* enumerate = app.add_subcommand("enumerate", "list members of a family in rank order");
    common(enumerate);
    params(enumerate);
    enumerate->add_option("--family", a.families, "family, e.g. ft1:n=7,m=1,k=1");

    auto* map = app.add_subcommand("map", "apply a map to one object");
    common(map);
    params(map);
    map->add_option("--map", a.map, "pi, pi-inverse, conjugate, rotate, unrotate, phi, phi-preimage, ft1, ft2, fib12, fib-gt1");
    map->add_option("--input", a.input, "comma-separated parts");
    map->add_flag("--trace", a.trace, "print the step table (phi only)");

    auto* verify = app.add_subcommand("verify", "check theorem suites over a parameter grid");
    auto* sweep_cmd = app.add_subcommand("sweep", "like verify, one line per point");
    for (auto* sub : {verify, sweep_cmd}) {
        common(sub);
        params(sub);
        sub->add_option("--suite", a.suites, "suite name or all (repeatable)");
        sub->add_option("--residues", a.policy, "R sets for lemma points: all or singletons")
            ->check(CLI::IsMember({"all", "singletons"}));
        sub->add_option("--map-cap", a.map_cap, "largest n for set-level map checks");
        sub->add_flag("--timing", a.timing, "include elapsed times");
    }

    auto* render_cmd = app.add_subcommand("render", "draw a Young or m-modular diagram");
    common(render_cmd);
    render_cmd->add_option("--input", a.input, "comma-separated parts");
    render_cmd->add_option("--sort", a.sort, "composition or partition")->check(CLI::IsMember({"composition", "partition"}));
    render_cmd->add_option("--style", a.style, "young or modular")->check(CLI::IsMember({"young", "modular"}));
    render_cmd->add_option("--m", a.m, "modulus for modular style");

    auto* rank = app.add_subcommand("rank", "index of a composition (or of a partition via pi)");
    common(rank);
    rank->add_option("--input", a.input, "comma-separated parts");
    rank->add_option("--sort", a.sort, "composition or partition")->check(CLI::IsMember({"composition", "partition"}));

    auto* unrank = app.add_subcommand("unrank", "composition (or partition) at an index");
    common(unrank);
    unrank->add_option("--n", a.n, "size");
    unrank->add_option("--index", a.index, "index in [0, 2^(n-1))");
    unrank->add_option("--sort", a.sort, "composition or partition")->check(CLI::IsMember({"composition", "partition"}));

    try {
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }
    a.index_given = unrank->count("--index") > 0;

    try {
        if (count->parsed()) return run_count(a, out);
        if (enumerate->parsed()) return run_enumerate(a, out);
        if (map->parsed()) return run_map(a, out);
        if (verify->parsed()) return run_verify(a, out, true);
        if (sweep_cmd->parsed()) return run_verify(a, out, false);
        if (render_cmd->parsed()) return run_render(a, out);
        if (rank->parsed()) return run_rank(a, out);
        if (unrank->parsed()) return run_unrank(a, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace perim::cli
