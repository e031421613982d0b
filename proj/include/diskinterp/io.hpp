#pragma once

// JSON documents and reports, CSV grids.

#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blaschke.hpp"
#include "hoffman.hpp"
#include "pick_solver.hpp"
#include "theorem_chain.hpp"

namespace diskinterp::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed point-set document.
class document_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// NaN and infinities become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json point_json(complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

[[nodiscard]] inline json to_document(const PointSequence& seq) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    if (seq.label()) doc["label"] = *seq.label();
    json pts = json::array();
    for (const DiskPoint& p : seq) pts.push_back(point_json(p.value()));
    doc["points"] = std::move(pts);
    return doc;
}

[[nodiscard]] inline PointSequence from_document(const json& doc) {
    if (!doc.is_object()) throw document_error("document must be a JSON object");
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
        doc["schema_version"].get<int>() != kSchemaVersion) {
        throw document_error("schema_version must be 1");
    }
    if (!doc.contains("points") || !doc["points"].is_array()) throw document_error("missing points array");
    const json& pts = doc["points"];
    if (pts.empty()) throw document_error("points list is empty");
    std::vector<complex> values;
    values.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const json& p = pts[i];
        if (!p.is_object() || !p.contains("re") || !p.contains("im") || !p["re"].is_number() ||
            !p["im"].is_number()) {
            throw invalid_point(i, "expected an object with numeric re and im");
        }
        values.emplace_back(p["re"].get<double>(), p["im"].get<double>());
    }
    std::optional<std::string> label;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw document_error("label must be a string");
        label = doc["label"].get<std::string>();
    }
    return PointSequence::from_values(values, std::move(label));
}

[[nodiscard]] inline PointSequence parse_document(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw document_error(std::string("invalid JSON: ") + e.what());
    }
    return from_document(doc);
}

[[nodiscard]] inline PointSequence parse_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw document_error(std::string("invalid JSON: ") + e.what());
    }
    return from_document(doc);
}

[[nodiscard]] inline json to_json(const AnalysisReport& r, const PointSequence& seq) {
    json out;
    out["length"] = r.length;
    if (seq.label()) out["label"] = *seq.label();
    out["blaschke_sum"] = number(r.blaschke_sum);
    out["separation_constant"] = number(r.separation_constant);
    out["carleson_constant"] = number(r.carleson_constant);
    json per = json::array();
    for (const auto& [n, v] : r.per_point) per.push_back(json{{"index", n}, {"value", number(v)}});
    out["per_point"] = std::move(per);
    return out;
}

[[nodiscard]] inline json to_json(const Decomposition& d) {
    json out;
    out["delta"] = number(d.delta);
    out["part0"] = d.part0;
    out["part1"] = d.part1;
    out["fitted_a"] = number(d.fitted_a);
    out["fitted_b"] = number(d.fitted_b);
    out["worst_point"] = point_json(d.worst_point);
    out["grid_resolution"] = d.grid.resolution;
    out["grid_radius"] = number(d.grid.radius);
    out["fit_grid_size"] = d.fit_grid_size();
    return out;
}

[[nodiscard]] inline json to_json(const ChainEntry& e) {
    return json{{"index", e.index}, {"re", e.point.real()}, {"im", e.point.imag()},
                {"value", number(e.value)}, {"bound", number(e.bound)}, {"margin", number(e.margin)},
                {"pass", e.pass}};
}

[[nodiscard]] inline json entries_json(const std::vector<ChainEntry>& entries) {
    json arr = json::array();
    for (const ChainEntry& e : entries) arr.push_back(to_json(e));
    return arr;
}

[[nodiscard]] inline json to_json(const ChainReport& r) {
    json out;
    out["hypothesis_ok"] = r.hypothesis_ok;
    out["length"] = r.length;
    out["separation_constant"] = number(r.separation_constant);
    out["delta"] = number(r.delta);
    out["part0"] = r.part0;
    out["part1"] = r.part1;
    out["min_norm"] = number(r.min_norm);
    out["c"] = number(r.c);
    out["eta"] = number(r.eta);
    out["c_g"] = number(r.c_g);
    out["eta_g"] = number(r.eta_g);
    out["step_a"] = entries_json(r.step_a);
    out["step_b"] = entries_json(r.step_b);
    out["fitted_a"] = number(r.fitted_a);
    out["fitted_b"] = number(r.fitted_b);
    out["step_c"] = entries_json(r.step_c);
    out["final"] = entries_json(r.final);
    out["carleson_direct"] = number(r.carleson_direct);
    return out;
}

/// %.17g, which round-trips every double.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

}  // namespace diskinterp::io
