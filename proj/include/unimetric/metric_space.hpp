#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numbers.hpp"
#include "rng.hpp"

namespace unimetric {

/// Finite metric space: distinct labels plus an exact, validated distance
/// matrix. Build one through validate(); library entry points assume the
/// metric axioms hold.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> dist;

    int size() const { return static_cast<int>(labels.size()); }
};

/// Validation failure carrying the first violated axiom ("shape", "labels",
/// "diagonal", "symmetry", "positivity", "triangle") and the witness indices,
/// in a fixed lexicographic scan order.
class MetricValidationError : public Error {
public:
    MetricValidationError(std::string axiom, std::vector<int> indices, const std::string& message)
        : Error(axiom, message), axiom_(std::move(axiom)), indices_(std::move(indices)) {}

    const std::string& axiom() const noexcept { return axiom_; }
    const std::vector<int>& indices() const noexcept { return indices_; }

private:
    std::string axiom_;
    std::vector<int> indices_;
};

inline FiniteMetricSpace validate(std::vector<std::string> labels,
                                  std::vector<std::vector<Rational>> matrix) {
    int p = static_cast<int>(labels.size());
    if (p < 1) throw MetricValidationError("shape", {}, "a metric space needs at least one point");
    if (static_cast<int>(matrix.size()) != p)
        throw MetricValidationError("shape", {}, "distance matrix must have one row per label");
    for (int i = 0; i < p; ++i)
        if (static_cast<int>(matrix[static_cast<size_t>(i)].size()) != p)
            throw MetricValidationError("shape", {i}, "distance matrix row " + std::to_string(i) + " is not length " +
                                                          std::to_string(p));
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (labels[static_cast<size_t>(i)] == labels[static_cast<size_t>(j)])
                throw MetricValidationError("labels", {i, j}, "duplicate label '" + labels[static_cast<size_t>(i)] + "'");
    auto at = [&](int i, int j) -> const Rational& { return matrix[static_cast<size_t>(i)][static_cast<size_t>(j)]; };
    for (int i = 0; i < p; ++i)
        if (at(i, i) != 0)
            throw MetricValidationError("diagonal", {i, i}, "d(" + labels[static_cast<size_t>(i)] + ", " +
                                                                labels[static_cast<size_t>(i)] + ") must be 0");
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (at(i, j) != at(j, i))
                throw MetricValidationError("symmetry", {i, j},
                                            "d(" + labels[static_cast<size_t>(i)] + ", " + labels[static_cast<size_t>(j)] +
                                                ") != d(" + labels[static_cast<size_t>(j)] + ", " +
                                                labels[static_cast<size_t>(i)] + ")");
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j && at(i, j) <= 0)
                throw MetricValidationError("positivity", {i, j},
                                            "d(" + labels[static_cast<size_t>(i)] + ", " + labels[static_cast<size_t>(j)] +
                                                ") must be positive");
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < p; ++k)
                if (at(i, k) > at(i, j) + at(j, k))
                    throw MetricValidationError(
                        "triangle", {i, j, k},
                        "d(" + labels[static_cast<size_t>(i)] + ", " + labels[static_cast<size_t>(k)] + ") > d(" +
                            labels[static_cast<size_t>(i)] + ", " + labels[static_cast<size_t>(j)] + ") + d(" +
                            labels[static_cast<size_t>(j)] + ", " + labels[static_cast<size_t>(k)] + ")");
    return FiniteMetricSpace{std::move(labels), std::move(matrix)};
}

/// Derived embedding parameters. eps is the smallest positive distance (X is
/// eps-dispersed), diam the largest; q = ceil(diam) and r = ceil(1/eps) round
/// up so that n >= diam and 1/n <= eps both hold exactly; n = max(p, q, r) is
/// the cube dimension and curve subscript used for X.
struct EmbeddingParams {
    int p = 0;
    Rational eps;
    Rational diam;
    BigInt q;
    BigInt r;
    BigInt n;
};

inline EmbeddingParams params(const FiniteMetricSpace& X) {
    int p = X.size();
    if (p < 2) throw Error("domain", "embedding parameters need at least two points");
    EmbeddingParams out;
    out.p = p;
    bool first = true;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const Rational& d = X.dist[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (first) {
                out.eps = d;
                out.diam = d;
                first = false;
            } else {
                if (d < out.eps) out.eps = d;
                if (d > out.diam) out.diam = d;
            }
        }
    out.q = rational_ceil(out.diam);
    out.r = rational_ceil(Rational(1) / out.eps);
    out.n = std::max(BigInt(p), std::max(out.q, out.r));
    return out;
}

/// The rounded-down variant max(p, floor(diam), floor(1/eps)). Kept for
/// regression tests only: with d = 2/5 it yields n = 2, and the space is not
/// 1/2-dispersed, so the construction's guarantees break.
inline BigInt floor_variant_n(const FiniteMetricSpace& X) {
    EmbeddingParams pr = params(X);
    return std::max(BigInt(pr.p), std::max(rational_floor(pr.diam), rational_floor(Rational(1) / pr.eps)));
}

/// True iff every positive distance is >= e.
inline bool is_dispersed(const FiniteMetricSpace& X, const Rational& e) {
    int p = X.size();
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (X.dist[static_cast<size_t>(i)][static_cast<size_t>(j)] < e) return false;
    return true;
}

enum class SpaceKind { uniform, random_euclidean, random_shortest_path };

inline const char* space_kind_name(SpaceKind k) {
    switch (k) {
    case SpaceKind::uniform: return "uniform";
    case SpaceKind::random_euclidean: return "random_euclidean";
    case SpaceKind::random_shortest_path: return "random_shortest_path";
    }
    return "?";
}

inline SpaceKind parse_space_kind(const std::string& s) {
    if (s == "uniform") return SpaceKind::uniform;
    if (s == "random_euclidean") return SpaceKind::random_euclidean;
    if (s == "random_shortest_path") return SpaceKind::random_shortest_path;
    throw Error("parse", "unknown space kind: '" + s + "'");
}

/// Deterministic test-space generator; same (kind, p, seed) gives the same
/// space. All kinds produce validated metrics with moderate eps (>= 1/16),
/// keeping the derived dimension n small.
inline FiniteMetricSpace generate(SpaceKind kind, int p, std::uint64_t seed) {
    if (p < 2) throw Error("domain", "generated spaces need at least two points");
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(p));
    for (int i = 1; i <= p; ++i) labels.push_back("x" + std::to_string(i));
    std::vector<std::vector<Rational>> m(static_cast<size_t>(p), std::vector<Rational>(static_cast<size_t>(p), Rational(0)));
    SplitMix64 rng(seed);
    switch (kind) {
    case SpaceKind::uniform:
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                if (i != j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
        break;
    case SpaceKind::random_euclidean: {
        // Distinct points on the grid ([0, 2] step 1/16)^3, sup metric.
        std::vector<std::array<int, 3>> pts;
        while (static_cast<int>(pts.size()) < p) {
            std::array<int, 3> c{static_cast<int>(rng.below(33)), static_cast<int>(rng.below(33)),
                                 static_cast<int>(rng.below(33))};
            if (std::find(pts.begin(), pts.end(), c) == pts.end()) pts.push_back(c);
        }
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) {
                int g = 0;
                for (int ax = 0; ax < 3; ++ax)
                    g = std::max(g, std::abs(pts[static_cast<size_t>(i)][static_cast<size_t>(ax)] -
                                             pts[static_cast<size_t>(j)][static_cast<size_t>(ax)]));
                Rational d = make_rational(g, 16);
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] = d;
                m[static_cast<size_t>(j)][static_cast<size_t>(i)] = d;
            }
        break;
    }
    case SpaceKind::random_shortest_path: {
        // Symmetric edge weights in [1/2, 3] (step 1/16), closed under
        // shortest paths. Weights >= 1/2 keep the metric 1/2-dispersed.
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) {
                Rational d = make_rational(8 + static_cast<int>(rng.below(41)), 16);
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] = d;
                m[static_cast<size_t>(j)][static_cast<size_t>(i)] = d;
            }
        for (int mid = 0; mid < p; ++mid)
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) {
                    if (i == mid || j == mid || i == j) continue;
                    Rational via = m[static_cast<size_t>(i)][static_cast<size_t>(mid)] +
                                   m[static_cast<size_t>(mid)][static_cast<size_t>(j)];
                    if (via < m[static_cast<size_t>(i)][static_cast<size_t>(j)])
                        m[static_cast<size_t>(i)][static_cast<size_t>(j)] = via;
                }
        break;
    }
    }
    return validate(std::move(labels), std::move(m));
}

} // namespace unimetric
