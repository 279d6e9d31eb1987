#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "dyadic.hpp"
#include "errors.hpp"
#include "hilbert.hpp"
#include "interval.hpp"
#include "numbers.hpp"

namespace unimetric {

// The universal distance on the half line: inside the unit interval
// J_n = [n-1, n] it is d_n(x, y) = max(min(|x-y|, 1/n), D(f_n(x), f_n(y)))
// with D the sup metric on [0, n]^n, and across intervals consecutive pieces
// are glued additively through the shared integer endpoints. Values are
// irrational in general; the evaluator returns exact rational enclosures of
// requested width, and exact values whenever both parameters are dyadic
// (cell corners) or coincide.

/// One gluing step: max(min(base, eps), sup). base and sup are distances,
/// eps the truncation level.
inline Rational d_eps_combine(const Rational& base, const Rational& eps, const Rational& sup) {
    if (eps <= 0) throw Error("domain", "eps must be positive");
    if (base < 0 || sup < 0) throw Error("domain", "distances must be nonnegative");
    return std::max(std::min(base, eps), sup);
}

/// Enclosure of d_n(x, y) for x, y in [n-1, n], of width <= tol. Exact when
/// x = y or both parameters are dyadic.
inline DistInterval interval_metric(int n, const Rational& x, const Rational& y, const Rational& tol) {
    curve_detail::check_dimension(n);
    if (tol <= 0) throw Error("domain", "tolerance must be positive");
    if (x < n - 1 || x > n || y < n - 1 || y > n)
        throw Error("domain", "parameters must lie in [" + std::to_string(n - 1) + ", " + std::to_string(n) + "]");
    if (x == y) return exact_interval(Rational(0));
    Rational diff = abs(x - y);
    Rational base = std::min(diff, make_rational(1, n));
    if (is_dyadic(x) && is_dyadic(y)) {
        Rational d = sup_dist(curve_point_exact(n, to_dyadic(x)), curve_point_exact(n, to_dyadic(y)));
        return exact_interval(std::max(base, d));
    }
    curve_detail::ParamWalk wx(n, x - (n - 1));
    curve_detail::ParamWalk wy(n, y - (n - 1));
    for (int depth = 1;; ++depth) {
        wx.step();
        wy.step();
        BigInt gap = 0;
        for (int i = 0; i < n; ++i) {
            BigInt g = wx.cells.coords()[static_cast<size_t>(i)] - wy.cells.coords()[static_cast<size_t>(i)];
            if (g < 0) g = -g;
            if (g > gap) gap = g;
        }
        // Both images lie in closed boxes of side s; per axis the true gap is
        // within one side of the integer gap.
        Rational side = make_rational(n, pow2(static_cast<unsigned>(depth)));
        Rational dhi = Rational(BigInt(gap + 1)) * side;
        if (dhi <= base) return exact_interval(base);
        Rational dlo = gap <= 1 ? Rational(0) : Rational(BigInt(gap - 1)) * side;
        Rational lo = std::max(base, dlo);
        Rational hi = std::max(base, dhi);
        if (hi - lo <= tol) return {lo, hi};
    }
}

/// Enclosure of d_n(x, y) taken at exactly refinement depth k (no adaptive
/// deepening, no dyadic shortcut). Width is at most 2n * 2^-k; x = y still
/// gives [0, 0].
inline DistInterval interval_metric_at_depth(int n, const Rational& x, const Rational& y, int k) {
    curve_detail::check_dimension(n);
    if (k < 0) throw Error("domain", "depth must be >= 0");
    if (x < n - 1 || x > n || y < n - 1 || y > n)
        throw Error("domain", "parameters must lie in [" + std::to_string(n - 1) + ", " + std::to_string(n) + "]");
    if (x == y) return exact_interval(Rational(0));
    Rational diff = abs(x - y);
    Rational base = std::min(diff, make_rational(1, n));
    curve_detail::ParamWalk wx(n, x - (n - 1));
    curve_detail::ParamWalk wy(n, y - (n - 1));
    for (int level = 0; level < k; ++level) {
        wx.step();
        wy.step();
    }
    BigInt gap = 0;
    for (int i = 0; i < n; ++i) {
        BigInt g = wx.cells.coords()[static_cast<size_t>(i)] - wy.cells.coords()[static_cast<size_t>(i)];
        if (g < 0) g = -g;
        if (g > gap) gap = g;
    }
    Rational side = make_rational(n, pow2(static_cast<unsigned>(k)));
    Rational dlo = gap <= 1 ? Rational(0) : Rational(BigInt(gap - 1)) * side;
    Rational dhi = Rational(BigInt(gap + 1)) * side;
    return {std::max(base, dlo), std::max(base, dhi)};
}

/// Exact cost of crossing from J_k into J_{k+1}, i.e. d_k(k-1, k), computed
/// from the curve's endpoint corners (entry (0,...,0), exit (k, 0,...,0)).
inline Rational bridge_cost(int k) {
    curve_detail::check_dimension(k);
    CubePoint a = curve_point_exact(k, dyadic_from_int(BigInt(k - 1)));
    CubePoint b = curve_point_exact(k, dyadic_from_int(BigInt(k)));
    return d_eps_combine(Rational(1), make_rational(1, k), sup_dist(a, b));
}

/// Chain evaluation with x treated as a point of J_m (requires x in [m-1, m]
/// and x <= y): d(x, y) = d_m(x, m) + bridges + d_n'(n'-1, y). Each endpoint
/// enclosure gets half the tolerance; when one endpoint term is exact the
/// other is re-evaluated with the full budget, so a width-0 term never wastes
/// tolerance. Exposed separately so routing x = m through J_m or J_{m+1} can
/// be compared; both give identical enclosures.
inline DistInterval dist_routed(int m, const Rational& x, const Rational& y, const Rational& tol) {
    if (tol <= 0) throw Error("domain", "tolerance must be positive");
    if (x > y) throw Error("domain", "chain evaluation requires x <= y");
    BigInt top = rational_ceil(y);
    if (top < 1) top = 1;
    if (top > kMaxDimension)
        throw Error("scale", "point " + format_number(y) + " beyond supported range (interval index > " +
                                 std::to_string(kMaxDimension) + ")");
    int ny = static_cast<int>(top);
    if (ny <= m) return interval_metric(m, x, y, tol);
    DistInterval left = interval_metric(m, x, Rational(m), tol / 2);
    DistInterval right = interval_metric(ny, Rational(ny - 1), y, tol / 2);
    if (is_exact(left) && !is_exact(right)) right = interval_metric(ny, Rational(ny - 1), y, tol);
    else if (is_exact(right) && !is_exact(left)) left = interval_metric(m, x, Rational(m), tol);
    Rational bridges = 0;
    for (int k = m + 1; k < ny; ++k) bridges += bridge_cost(k);
    return shift(left + right, bridges);
}

/// Enclosure of the universal distance d(x, y) for arbitrary reals on the
/// half line (negative inputs extend isometrically: the map is the identity
/// below 0). Result width <= tol; exact when both inputs are dyadic.
inline DistInterval universal_dist(Rational x, Rational y, const Rational& tol) {
    if (tol <= 0) throw Error("domain", "tolerance must be positive");
    if (x > y) std::swap(x, y);
    if (y <= 0) return exact_interval(y - x);
    if (x <= 0) return shift(dist_routed(1, Rational(0), y, tol), -x);
    BigInt m = rational_ceil(x);
    if (m > kMaxDimension)
        throw Error("scale", "point " + format_number(x) + " beyond supported range (interval index > " +
                                 std::to_string(kMaxDimension) + ")");
    return dist_routed(static_cast<int>(m), x, y, tol);
}

} // namespace unimetric
