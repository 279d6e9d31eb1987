#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dyadic.hpp"
#include "embed.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "metric_space.hpp"
#include "numbers.hpp"
#include "verify.hpp"

namespace unimetric {

// Wire formats. Numbers travel as exact text: integers plain ("3"), anything
// else as "p/q". Parsers additionally accept decimal / scientific literals
// and integer JSON tokens; floating-point JSON tokens are rejected rather
// than silently rounded.

using OrderedJson = nlohmann::ordered_json;

namespace io_detail {

inline Rational number_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) return parse_number(v.get<std::string>());
    if (v.is_number_integer()) return Rational(BigInt(v.get<long long>()));
    if (v.is_number_unsigned()) return Rational(BigInt(v.get<unsigned long long>()));
    if (v.is_number_float())
        throw Error("parse", where + ": floating-point tokens are not exact; write the value as a string");
    throw Error("parse", where + ": expected a number literal");
}

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

} // namespace io_detail

/// Parse {"labels": [...], "matrix": [[...], ...]} and validate the metric.
inline FiniteMetricSpace parse_space_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error("parse", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("labels") || !doc.contains("matrix"))
        throw Error("parse", "expected an object with 'labels' and 'matrix'");
    if (!doc["labels"].is_array() || !doc["matrix"].is_array())
        throw Error("parse", "'labels' and 'matrix' must be arrays");
    std::vector<std::string> labels;
    for (const auto& l : doc["labels"]) {
        if (!l.is_string()) throw Error("parse", "labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    std::vector<std::vector<Rational>> matrix;
    for (size_t i = 0; i < doc["matrix"].size(); ++i) {
        const auto& row = doc["matrix"][i];
        if (!row.is_array()) throw Error("parse", "matrix rows must be arrays");
        std::vector<Rational> r;
        for (size_t j = 0; j < row.size(); ++j)
            r.push_back(io_detail::number_from_json(row[j], "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
        matrix.push_back(std::move(r));
    }
    return validate(std::move(labels), std::move(matrix));
}

/// CSV form: one header line of labels, then the square matrix, row per line.
inline FiniteMetricSpace parse_space_csv(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!io_detail::trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw Error("parse", "empty document");
    std::vector<std::string> labels = io_detail::split_csv_line(lines[0]);
    if (lines.size() != labels.size() + 1)
        throw Error("parse", "expected " + std::to_string(labels.size()) + " matrix rows after the header");
    std::vector<std::vector<Rational>> matrix;
    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> cells = io_detail::split_csv_line(lines[i]);
        if (cells.size() != labels.size())
            throw Error("parse", "row " + std::to_string(i) + " has " + std::to_string(cells.size()) +
                                     " entries, expected " + std::to_string(labels.size()));
        std::vector<Rational> r;
        for (const std::string& c : cells) r.push_back(parse_number(c));
        matrix.push_back(std::move(r));
    }
    return validate(std::move(labels), std::move(matrix));
}

inline std::string write_space_json(const FiniteMetricSpace& X) {
    OrderedJson doc;
    doc["labels"] = X.labels;
    OrderedJson rows = OrderedJson::array();
    for (const auto& row : X.dist) {
        OrderedJson r = OrderedJson::array();
        for (const Rational& v : row) r.push_back(format_number(v));
        rows.push_back(std::move(r));
    }
    doc["matrix"] = std::move(rows);
    return doc.dump(2) + "\n";
}

inline std::string write_space_csv(const FiniteMetricSpace& X) {
    std::string out;
    for (size_t i = 0; i < X.labels.size(); ++i) {
        if (i) out += ",";
        out += X.labels[i];
    }
    out += "\n";
    for (const auto& row : X.dist) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out += ",";
            out += format_number(row[j]);
        }
        out += "\n";
    }
    return out;
}

namespace io_detail {

inline OrderedJson point_to_json(const CubePoint& p) {
    OrderedJson a = OrderedJson::array();
    for (const Rational& c : p.coords) a.push_back(format_number(c));
    return a;
}

} // namespace io_detail

/// Full embedding artifact: parameters, the embedded points, their exact
/// cube images and targets, and the pairwise certificate table. Field order
/// is fixed, so identical runs serialize identically.
inline std::string write_embedding_artifact(const FiniteMetricSpace& X, const EmbeddingResult& res,
                                            const CertificationReport& cert) {
    OrderedJson doc;
    doc["labels"] = X.labels;
    OrderedJson pj;
    pj["p"] = res.params.p;
    pj["eps"] = format_number(res.params.eps);
    pj["diam"] = format_number(res.params.diam);
    pj["q"] = res.params.q.str();
    pj["r"] = res.params.r.str();
    pj["n"] = res.params.n.str();
    doc["params"] = std::move(pj);
    doc["depth"] = res.depth;
    doc["delta"] = format_number(res.delta);
    doc["deviation_bound"] = format_number(cert.bound);
    OrderedJson pts = OrderedJson::array();
    for (const Dyadic& t : res.points) pts.push_back(format_dyadic(t));
    doc["points"] = std::move(pts);
    OrderedJson imgs = OrderedJson::array();
    for (const CubePoint& c : res.cube_images) imgs.push_back(io_detail::point_to_json(c));
    doc["cube_images"] = std::move(imgs);
    OrderedJson tgts = OrderedJson::array();
    for (const CubePoint& c : res.targets) tgts.push_back(io_detail::point_to_json(c));
    doc["targets"] = std::move(tgts);
    OrderedJson cj;
    cj["tol"] = format_number(cert.tol);
    cj["pass"] = cert.pass;
    OrderedJson pairs = OrderedJson::array();
    for (const PairCertificate& pc : cert.pairs) {
        OrderedJson e;
        e["i"] = pc.i;
        e["j"] = pc.j;
        e["expected"] = format_number(pc.expected);
        e["lo"] = format_number(pc.enclosure.lo);
        e["hi"] = format_number(pc.enclosure.hi);
        e["deviation"] = format_number(pc.deviation);
        e["ok"] = pc.ok;
        if (!pc.note.empty()) e["note"] = pc.note;
        pairs.push_back(std::move(e));
    }
    cj["pairs"] = std::move(pairs);
    cj["issues"] = cert.issues;
    if (cert.worst_i >= 0) {
        OrderedJson w;
        w["i"] = cert.worst_i;
        w["j"] = cert.worst_j;
        w["deviation"] = format_number(cert.worst_deviation);
        cj["worst"] = std::move(w);
    }
    doc["certificate"] = std::move(cj);
    BigInt rounded_down = floor_variant_n(X);
    if (rounded_down != res.params.n)
        doc["dimension_note"] = "q and r round up; rounding down would give n = " + rounded_down.str() +
                                ", too small to keep the space 1/n-dispersed or inside the cube";
    return doc.dump(2) + "\n";
}

inline std::string format_check_report(const CheckReport& rep) {
    std::string out = rep.name + ": " + (rep.pass() ? "pass" : "FAIL") + ", " + std::to_string(rep.cases_run) +
                      " cases";
    if (!rep.failures.empty()) out += ", " + std::to_string(rep.failures.size()) + " failures";
    out += "\n";
    for (const std::string& f : rep.failures) out += "  failure: " + f + "\n";
    for (const std::string& n : rep.notes) out += "  note: " + n + "\n";
    return out;
}

} // namespace unimetric
