#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "embed.hpp"
#include "errors.hpp"
#include "hilbert.hpp"
#include "interval.hpp"
#include "metric_space.hpp"
#include "numbers.hpp"
#include "rng.hpp"
#include "universal.hpp"

namespace unimetric {

/// Outcome of one verification run. Failures carry replayable witnesses
/// (exact inputs plus the seed that produced them); pass() iff none.
struct CheckReport {
    std::string name;
    long long cases_run = 0;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    bool pass() const { return failures.empty(); }
};

inline CheckReport merge_reports(std::string name, const std::vector<CheckReport>& parts) {
    CheckReport out;
    out.name = std::move(name);
    for (const CheckReport& r : parts) {
        out.cases_run += r.cases_run;
        out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
        out.notes.insert(out.notes.end(), r.notes.begin(), r.notes.end());
    }
    return out;
}

namespace verify_detail {

/// Random rational in [lo, hi] with denominator <= 64. Mixes dyadic and
/// non-dyadic values, so both the exact and the refining evaluation paths
/// run.
inline Rational sample_rational(SplitMix64& rng, const Rational& lo, const Rational& hi) {
    BigInt den = 1 + static_cast<long>(rng.below(64));
    BigInt span = rational_floor((hi - lo) * Rational(den));
    BigInt num = span == 0 ? BigInt(0) : BigInt(rng.next() % span.convert_to<std::uint64_t>());
    if (span > 0 && rng.below(16) == 0) num = span; // occasionally hit the far edge
    return lo + make_rational(num, den);
}

inline std::string point_list(const std::vector<BigInt>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

} // namespace verify_detail

/// Exhaustively check the depth-k subdivision of [0, n]^n: cell coordinates
/// are a bijection onto the full grid, consecutive cells are face-adjacent,
/// each cell's exit is the next cell's entry, boxes nest into their depth-
/// (k-1) parents with matching outer entry/exit corners, and index_of_cell
/// inverts cell_of_index. Cost is 2^(n*k) cells; bounded to n <= 4, k <= 3.
inline CheckReport check_curve(int n, int k) {
    if (n < 1 || k < 1) throw Error("domain", "check_curve needs n >= 1, k >= 1");
    if (n > 4 || k > 3)
        throw Error("scale", "exhaustive grid has 2^(n*k) cells; supported range is n <= 4, k <= 3");
    CheckReport rep;
    rep.name = "curve[n=" + std::to_string(n) + ",k=" + std::to_string(k) + "]";
    const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k);
    BigInt total = pow2(static_cast<unsigned>(n * k));
    std::set<std::vector<BigInt>> seen;
    CurveCell prev;
    for (BigInt i = 0; i < total; ++i) {
        CurveCell c = cell_of_index(n, k, i);
        std::string at = where + " cell " + i.str();
        if (!seen.insert(c.cell_coords).second)
            rep.failures.push_back(at + ": duplicate coordinates " + verify_detail::point_list(c.cell_coords));
        if (index_of_cell(n, k, c.cell_coords) != i)
            rep.failures.push_back(at + ": index_of_cell does not invert cell_of_index");
        Box box = cell_box(c);
        if (!box_contains(box, c.entry) || !box_contains(box, c.exit))
            rep.failures.push_back(at + ": entry/exit corner outside the cell box");
        if (i > 0) {
            int moved = 0;
            bool unit = true;
            for (int ax = 0; ax < n; ++ax) {
                BigInt d = c.cell_coords[static_cast<size_t>(ax)] - prev.cell_coords[static_cast<size_t>(ax)];
                if (d == 0) continue;
                ++moved;
                if (d != 1 && d != -1) unit = false;
            }
            if (moved != 1 || !unit)
                rep.failures.push_back(at + ": not face-adjacent to cell " + BigInt(i - 1).str());
            if (!(prev.exit == c.entry))
                rep.failures.push_back(at + ": entry does not meet the previous cell's exit");
        }
        CurveCell parent = cell_of_index(n, k - 1, i >> n);
        Box pbox = cell_box(parent);
        if (!box_contains(pbox, box.lower))
            rep.failures.push_back(at + ": box escapes its parent");
        BigInt child_rank = i & curve_detail::mask_ones(n);
        if (child_rank == 0 && !(parent.entry == c.entry))
            rep.failures.push_back(at + ": first child entry differs from parent entry");
        if (child_rank == curve_detail::mask_ones(n) && !(parent.exit == c.exit))
            rep.failures.push_back(at + ": last child exit differs from parent exit");
        prev = std::move(c);
        ++rep.cases_run;
    }
    if (BigInt(static_cast<long long>(seen.size())) != total)
        rep.failures.push_back(where + ": subdivision does not cover the full grid");
    return rep;
}

/// Sample triples from [lo, hi] and check the metric axioms on enclosures:
/// identity d(x, x) = [0, 0], exact symmetry, and the interval-sound triangle
/// inequality lo(d(x,z)) <= hi(d(x,y)) + hi(d(y,z)). A failure is a genuine
/// counterexample, not tolerance noise.
inline CheckReport check_axioms(int samples, const Rational& lo, const Rational& hi, const Rational& tol,
                                std::uint64_t seed) {
    if (samples < 1) throw Error("domain", "need at least one sample");
    if (lo >= hi) throw Error("domain", "empty sampling range");
    if (tol <= 0) throw Error("domain", "tolerance must be positive");
    CheckReport rep;
    rep.name = "axioms";
    SplitMix64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        Rational x = verify_detail::sample_rational(rng, lo, hi);
        Rational y = verify_detail::sample_rational(rng, lo, hi);
        Rational z = verify_detail::sample_rational(rng, lo, hi);
        std::string at = "seed=" + std::to_string(seed) + " sample=" + std::to_string(s) + " x=" + format_number(x) +
                         " y=" + format_number(y) + " z=" + format_number(z);
        DistInterval dxx = universal_dist(x, x, tol);
        if (!(dxx == exact_interval(Rational(0))))
            rep.failures.push_back(at + ": d(x,x) = " + format_interval(dxx) + " is not exactly 0");
        DistInterval dxy = universal_dist(x, y, tol);
        DistInterval dyx = universal_dist(y, x, tol);
        if (!(dxy == dyx))
            rep.failures.push_back(at + ": symmetry broke, " + format_interval(dxy) + " vs " + format_interval(dyx));
        if (x != y && dxy.lo <= 0 && dxy.hi == 0)
            rep.failures.push_back(at + ": d(x,y) = 0 for distinct points");
        DistInterval dyz = universal_dist(y, z, tol);
        DistInterval dxz = universal_dist(x, z, tol);
        if (dxz.lo > dxy.hi + dyz.hi)
            rep.failures.push_back(at + ": triangle inequality broke, " + format_interval(dxz) + " > " +
                                   format_interval(dxy) + " + " + format_interval(dyz));
        ++rep.cases_run;
    }
    return rep;
}

/// Generate spaces, embed each at depth k (k = 0 selects the per-space
/// default), and require every pairwise deviation within the certified bound
/// 4 * delta. Embedded parameters are dyadic, so the distances compare
/// exactly. p_max <= 8 keeps the exact evaluation cost bounded.
inline CheckReport check_isometry(int space_count, int p_max, int k, std::uint64_t seed) {
    if (space_count < 1) throw Error("domain", "need at least one space");
    if (p_max < 1) throw Error("domain", "p_max must be >= 1");
    if (p_max > 8) throw Error("scale", "supported p_max is 8");
    CheckReport rep;
    rep.name = "isometry";
    SplitMix64 rng(seed);
    const SpaceKind kinds[] = {SpaceKind::uniform, SpaceKind::random_euclidean, SpaceKind::random_shortest_path};
    for (int s = 0; s < space_count; ++s) {
        SpaceKind kind = kinds[s % 3];
        std::string at = "seed=" + std::to_string(seed) + " space=" + std::to_string(s);
        if (p_max < 2) {
            rep.notes.push_back(at + ": singleton space, trivial embedding, skipped");
            ++rep.cases_run;
            continue;
        }
        int p = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p_max - 1)));
        std::uint64_t space_seed = rng.next();
        FiniteMetricSpace X = generate(kind, p, space_seed);
        at += std::string(" kind=") + space_kind_name(kind) + " p=" + std::to_string(p) +
              " space_seed=" + std::to_string(space_seed);
        int depth = k >= 1 ? k : default_depth(params(X));
        EmbeddingResult res;
        try {
            res = embed_space(X, depth);
        } catch (const DepthError& e) {
            rep.failures.push_back(at + ": depth " + std::to_string(depth) + " rejected: " + e.what());
            ++rep.cases_run;
            continue;
        }
        CertificationReport cert = certify(X, res, make_rational(1, detail::pow10(9)));
        for (const PairCertificate& pc : cert.pairs) {
            if (!is_exact(pc.enclosure))
                rep.failures.push_back(at + " pair (" + std::to_string(pc.i) + "," + std::to_string(pc.j) +
                                       "): embedded distance not exact");
            else if (pc.deviation > cert.bound)
                rep.failures.push_back(at + " pair (" + std::to_string(pc.i) + "," + std::to_string(pc.j) +
                                       "): deviation " + format_number(pc.deviation) + " exceeds bound " +
                                       format_number(cert.bound));
            ++rep.cases_run;
        }
        for (const std::string& issue : cert.issues) rep.failures.push_back(at + ": " + issue);
    }
    return rep;
}

/// Sample parameter pairs with |x - y| <= 2^-(n*k) and check the depth-k
/// enclosure of d_n: upper bound at most 2n * 2^-k (the two parameters land
/// in the same or consecutive cells) and lower bound at least
/// min(|x - y|, 1/n).
inline CheckReport check_modulus(int n, int k, int samples, std::uint64_t seed) {
    if (n < 1 || k < 1 || samples < 1) throw Error("domain", "check_modulus needs n, k, samples >= 1");
    if (n > 4) throw Error("scale", "supported n is at most 4");
    if (n * k > 40) throw Error("scale", "supported n * k is at most 40");
    CheckReport rep;
    rep.name = "modulus[n=" + std::to_string(n) + ",k=" + std::to_string(k) + "]";
    SplitMix64 rng(seed);
    BigInt cells = pow2(static_cast<unsigned>(n * k));
    Rational side_bound = make_rational(2 * n, pow2(static_cast<unsigned>(k)));
    for (int s = 0; s < samples; ++s) {
        BigInt b = 1 + static_cast<long>(rng.below(64));
        BigInt a = BigInt(rng.next()) % (b * (cells - 1) + 1);
        Rational x = Rational(n - 1) + make_rational(a, b * cells);
        BigInt d = 1 + static_cast<long>(rng.below(16));
        BigInt c = static_cast<long>(rng.below(static_cast<std::uint64_t>(d.convert_to<long>() + 1)));
        Rational y = x + make_rational(c, d * cells);
        std::string at = "seed=" + std::to_string(seed) + " sample=" + std::to_string(s) + " n=" + std::to_string(n) +
                         " k=" + std::to_string(k) + " x=" + format_number(x) + " y=" + format_number(y);
        DistInterval iv = interval_metric_at_depth(n, x, y, k);
        if (x == y) {
            if (!(iv == exact_interval(Rational(0))))
                rep.failures.push_back(at + ": equal parameters gave " + format_interval(iv));
        } else {
            if (iv.hi > side_bound)
                rep.failures.push_back(at + ": upper bound " + format_number(iv.hi) + " exceeds " +
                                       format_number(side_bound));
            Rational diff = y - x;
            Rational base = std::min(diff, make_rational(1, n));
            if (iv.lo < base)
                rep.failures.push_back(at + ": lower bound " + format_number(iv.lo) + " below min(|x-y|, 1/n)");
        }
        ++rep.cases_run;
    }
    return rep;
}

} // namespace unimetric
