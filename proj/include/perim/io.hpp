#pragma once

// Text rendering of diagrams and serialization of objects, traces and reports.
// JSON keys come out in insertion order, so identical inputs give identical
// bytes.

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "perim/bijections.hpp"
#include "perim/core.hpp"
#include "perim/family.hpp"
#include "perim/verify.hpp"

namespace perim {

using json = nlohmann::ordered_json;

enum class OutputFormat { text, json, csv };

// ---------------------------------------------------------------------------
// Diagrams.

enum class DiagramStyle { young, modular };

struct RenderedDiagram {
    DiagramStyle style = DiagramStyle::young;
    int modulus = 0;  // modular style only
    std::vector<std::string> lines;

    std::string str() const {
        std::string out;
        for (const auto& line : lines) out += line + '\n';
        return out;
    }
};

inline constexpr char kCellGlyph = '#';

// Young style draws one glyph per cell, rows top-down in the object's order.
// Modular style writes each row's m-modular digits separated by spaces.
inline RenderedDiagram render(const Object& object, DiagramStyle style, int m = 0) {
    RenderedDiagram out{style, style == DiagramStyle::modular ? m : 0, {}};
    if (style == DiagramStyle::young) {
        for (Part part : parts_of(object)) out.lines.emplace_back(static_cast<std::size_t>(part), kCellGlyph);
        return out;
    }
    const auto* c = std::get_if<Composition>(&object);
    if (!c) throw domain_error("modular rendering takes a composition");
    for (const auto& row : m_modular(*c, m).rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += ' ';
            line += std::to_string(row[i]);
        }
        out.lines.push_back(std::move(line));
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON.

inline json parts_json(std::span<const Part> parts) { return json(std::vector<Part>(parts.begin(), parts.end())); }

inline json to_json(const CompositionIndex& rank) { return json{{"n", rank.n}, {"index", rank.index}}; }

inline json to_json(const Object& object) {
    return json{{"sort", sort_name(sort_of(object))}, {"parts", parts_json(parts_of(object))}};
}

inline json to_json(const Witness& w) {
    return json{{"label", w.label},
                {"sort", sort_name(sort_of(w.object))},
                {"parts", parts_json(parts_of(w.object))},
                {"rank", to_json(w.rank)}};
}

inline json to_json(const TheoremParams& p) {
    json out{{"n", p.n}};
    if (p.m) out["m"] = *p.m;
    if (p.k) out["k"] = *p.k;
    if (!p.residues.empty()) out["R"] = p.residues;
    return out;
}

inline json to_json(const Relation& r) {
    json out{{"name", r.name},
             {"kind", relation_kind_name(r.kind)},
             {"statement", r.statement},
             {"expected", r.expected},
             {"observed", r.observed},
             {"passed", r.passed()},
             {"detail", r.detail}};
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
    out["witnesses"] = std::move(witnesses);
    return out;
}

struct ReportFormat {
    bool timing = false;  // include elapsed_ms; off keeps output reproducible
};

inline json to_json(const TheoremReport& report, const ReportFormat& format = {}) {
    json out{{"theorem", report.theorem}, {"params", to_json(report.params)}, {"passed", report.passed()}};
    json counts = json::object();
    for (const auto& [name, value] : report.counts) counts[name] = value;
    out["counts"] = std::move(counts);
    json metrics = json::object();
    for (const auto& [name, value] : report.metrics) metrics[name] = value;
    out["metrics"] = std::move(metrics);
    json notes = json::object();
    for (const auto& [name, value] : report.notes) notes[name] = value;
    out["notes"] = std::move(notes);
    json relations = json::array();
    for (const auto& r : report.relations) relations.push_back(to_json(r));
    out["relations"] = std::move(relations);
    json witnesses = json::array();
    for (const auto& w : report.witnesses) witnesses.push_back(to_json(w));
    out["witnesses"] = std::move(witnesses);
    if (format.timing) out["elapsed_ms"] = report.elapsed_ms;
    return out;
}

inline json to_json(const SweepReport& sweep, const ReportFormat& format = {}) {
    json suites = json::array();
    for (const auto& suite : sweep.suites) {
        json reports = json::array();
        for (const auto& r : suite.reports) reports.push_back(to_json(r, format));
        suites.push_back(json{{"suite", suite.suite},
                              {"points", suite.reports.size()},
                              {"failures", suite.failures()},
                              {"reports", std::move(reports)}});
    }
    return json{{"passed", sweep.passed()},
                {"points", sweep.points()},
                {"failures", sweep.failures()},
                {"suites", std::move(suites)}};
}

inline json to_json(const PhiStep& s) {
    json out{{"i", s.index},
             {"part", s.part},
             {"j_before", s.j_before},
             {"j_after", s.j_after},
             {"branch", s.branch == PhiBranch::split ? "split" : "preserve"}};
    out["r"] = s.remainder ? json(*s.remainder) : json(nullptr);
    out["emitted"] = s.emitted;
    return out;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Text.

inline std::string params_text(const TheoremParams& p) {
    std::string out = "n=" + std::to_string(p.n);
    if (p.m) out += " m=" + std::to_string(*p.m);
    if (p.k) out += " k=" + std::to_string(*p.k);
    if (!p.residues.empty()) out += " R=" + detail::join_parts(p.residues);
    return out;
}

inline std::string witness_text(const Witness& w) {
    return w.label + ": " + to_string(w.object) + " (" + sort_name(sort_of(w.object)) + ", rank " +
           std::to_string(w.rank.index) + " of n=" + std::to_string(w.rank.n) + ")";
}

inline std::string summary_line(const TheoremReport& r) {
    std::string out = r.theorem + " " + params_text(r.params) + ": " + (r.passed() ? "PASS" : "FAIL");
    for (const auto& [name, value] : r.metrics) out += " " + name + "=" + std::to_string(value);
    return out;
}

inline std::string to_text(const TheoremReport& r, const ReportFormat& format = {}) {
    std::ostringstream out;
    out << summary_line(r) << '\n';
    out << "  counts:";
    for (const auto& [name, value] : r.counts) out << ' ' << name << '=' << value;
    out << '\n';
    for (const auto& [name, value] : r.notes) out << "  " << name << ": " << value << '\n';
    for (const auto& rel : r.relations) {
        out << "  [" << (rel.passed() ? "PASS" : "FAIL") << "] " << rel.name << ": " << rel.statement;
        if (!rel.expected) out << " (asserted false)";
        if (!rel.detail.empty()) out << " -- " << rel.detail;
        out << '\n';
        if (!rel.passed())
            for (const auto& w : rel.witnesses) out << "      " << witness_text(w) << '\n';
    }
    for (const auto& w : r.witnesses) out << "  witness " << witness_text(w) << '\n';
    if (format.timing) out << "  elapsed_ms: " << std::fixed << std::setprecision(1) << r.elapsed_ms << '\n';
    return out.str();
}

inline std::string to_text(const SweepReport& sweep, const ReportFormat& format = {}) {
    std::ostringstream out;
    for (const auto& suite : sweep.suites) {
        for (const auto& r : suite.reports) {
            if (r.passed()) {
                out << summary_line(r);
                if (format.timing) out << " (" << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms)";
                out << '\n';
            } else {
                out << to_text(r, format);
            }
        }
        out << "suite " << suite.suite << ": " << suite.reports.size() << " points, " << suite.failures()
            << " failures\n";
    }
    out << "total: " << sweep.points() << " points, " << sweep.failures() << " failures\n";
    return out.str();
}

inline std::string trace_text(const PhiTrace& trace) {
    std::ostringstream out;
    out << std::left << std::setw(4) << "i" << std::setw(6) << "part" << std::setw(10) << "j_before" << std::setw(9)
        << "j_after" << std::setw(10) << "branch" << std::setw(3) << "r" << "emitted\n";
    for (const auto& s : trace.steps) {
        out << std::left << std::setw(4) << s.index << std::setw(6) << s.part << std::setw(10) << s.j_before
            << std::setw(9) << s.j_after << std::setw(10) << (s.branch == PhiBranch::split ? "split" : "preserve")
            << std::setw(3) << (s.remainder ? std::to_string(*s.remainder) : "-") << detail::join_parts(s.emitted)
            << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// CSV.

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline constexpr const char* kCountCsvHeader = "n,m,k,family,count\n";
inline constexpr const char* kSweepCsvHeader = "n,m,k,family,count,suite,R,passed\n";
inline constexpr const char* kEnumerateCsvHeader = "index,parts\n";

inline std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

inline std::string count_csv_row(const FamilySpec& spec, std::uint64_t count) {
    return std::to_string(*spec.n) + "," + opt_text(spec.m) + "," + opt_text(spec.k) + "," + csv_quote(to_string(spec)) +
           "," + std::to_string(count) + "\n";
}

inline std::string to_csv(const SweepReport& sweep) {
    std::string out = kSweepCsvHeader;
    for (const auto& suite : sweep.suites) {
        for (const auto& r : suite.reports) {
            const std::string prefix =
                std::to_string(r.params.n) + "," + opt_text(r.params.m) + "," + opt_text(r.params.k) + ",";
            const std::string suffix = "," + suite.suite + "," + csv_quote(detail::join_parts(r.params.residues)) + "," +
                                       (r.passed() ? "true" : "false") + "\n";
            for (const auto& [name, value] : r.counts) out += prefix + csv_quote(name) + "," + std::to_string(value) + suffix;
        }
    }
    return out;
}

}  // namespace perim
