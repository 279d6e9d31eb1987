#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dyadic.hpp"
#include "errors.hpp"
#include "numbers.hpp"

namespace unimetric {

// Space-filling curve f_n : [n-1, n] -> [0, n]^n, built by recursive cell
// subdivision. At depth k the parameter interval splits into 2^(n*k) equal
// subintervals, visited in curve order; cell i covers the axis-aligned box of
// side n*2^-k whose integer grid coordinates this module tracks exactly. The
// subdivision order inside a cell is the n-bit Gray-code sequence, reoriented
// per cell so that consecutive cells share the exit/entry corner; this makes
// f_n continuous and gives |f_n(s) - f_n(t)| <= 2n * |s-t|^(1/n) in the sup
// metric (two parameters within one subinterval land in the same or
// face-adjacent cells).
//
// All arithmetic is integer/rational; results are exact corner points or
// exact boxes, never floating approximations.

/// Point of [0, n]^n with exact rational coordinates.
struct CubePoint {
    int dim = 0;
    std::vector<Rational> coords;
};

inline bool operator==(const CubePoint& a, const CubePoint& b) {
    return a.dim == b.dim && a.coords == b.coords;
}

/// Sup-metric distance, max_i |a_i - b_i|.
inline Rational sup_dist(const CubePoint& a, const CubePoint& b) {
    if (a.dim != b.dim) throw Error("domain", "dimension mismatch in sup_dist");
    Rational best = 0;
    for (int i = 0; i < a.dim; ++i) {
        Rational d = abs(a.coords[i] - b.coords[i]);
        if (d > best) best = d;
    }
    return best;
}

inline bool in_cube(const CubePoint& p) {
    for (const Rational& c : p.coords)
        if (c < 0 || c > p.dim) return false;
    return true;
}

/// Axis-aligned box with equal sides, lower corner + side length.
struct Box {
    CubePoint lower;
    Rational side;
};

inline bool box_contains(const Box& b, const CubePoint& p) {
    if (p.dim != b.lower.dim) return false;
    for (int i = 0; i < p.dim; ++i) {
        if (p.coords[i] < b.lower.coords[i]) return false;
        if (p.coords[i] > b.lower.coords[i] + b.side) return false;
    }
    return true;
}

/// One subdivision cell: its curve index at `depth`, integer grid coordinates
/// (each in [0, 2^depth)), and the exact corner points where the curve enters
/// and leaves its box.
struct CurveCell {
    int dim = 0;
    int depth = 0;
    BigInt index;
    std::vector<BigInt> cell_coords;
    CubePoint entry;
    CubePoint exit;
};

inline Box cell_box(const CurveCell& c) {
    Box b;
    b.lower.dim = c.dim;
    b.lower.coords.reserve(c.dim);
    Rational side = make_rational(c.dim, pow2(static_cast<unsigned>(c.depth)));
    for (int i = 0; i < c.dim; ++i) b.lower.coords.push_back(Rational(c.cell_coords[i]) * side);
    b.side = side;
    return b;
}

/// Hard cap on the cube dimension (= curve subscript). Evaluation cost grows
/// quadratically past this through the exact per-interval sums.
inline constexpr int kMaxDimension = 4096;

namespace curve_detail {

inline BigInt mask_ones(int n) { return pow2(static_cast<unsigned>(n)) - 1; }

inline BigInt gray_code(const BigInt& w) { return w ^ (w >> 1); }

inline BigInt gray_decode(BigInt g, int n) {
    for (int s = 1; s < n; s <<= 1) g ^= g >> s;
    return g;
}

/// Rotate the low n bits of b left by r (r in [0, n)).
inline BigInt rotl_mask(const BigInt& b, int r, int n) {
    return ((b << r) | (b >> (n - r))) & mask_ones(n);
}

inline BigInt rotr_mask(const BigInt& b, int r, int n) { return rotl_mask(b, n - r == n ? 0 : n - r, n); }

/// Number of trailing set bits of w (w >= 0).
inline int trailing_set_bits(const BigInt& w) {
    BigInt t = w + 1;
    return static_cast<int>(lsb(t));
}

/// Entry corner (as a bit mask, canonical orientation) of the child with
/// curve rank j inside its parent.
inline BigInt child_entry(const BigInt& j) {
    if (j == 0) return 0;
    BigInt t = j - 1;
    if (bit_test(t, 0)) t -= 1; // round down to even
    return gray_code(t);
}

/// Axis (canonical orientation) along which the child's own subdivision runs.
inline int child_direction(const BigInt& j, int n) {
    if (j == 0) return 0;
    if (bit_test(j, 0)) return trailing_set_bits(j) % n;
    return trailing_set_bits(j - 1) % n;
}

/// Orientation of the current cell: corner masks of the canonical curve map
/// to cell-local corner masks via b -> rotl(b, rot) ^ flip. Bit b of a mask
/// addresses coordinate axis n-1-b.
struct Frame {
    int rot = 0;
    BigInt flip = 0;

    BigInt apply(const BigInt& b, int n) const { return rotl_mask(b, rot, n) ^ flip; }

    BigInt apply_inverse(const BigInt& b, int n) const { return rotr_mask(b ^ flip, rot, n); }

    /// Compose with the orientation of the rank-j child. flip must be updated
    /// with the parent's rot, so order matters.
    void descend(const BigInt& j, int n) {
        flip = rotl_mask(child_entry(j), rot, n) ^ flip;
        rot = (rot + child_direction(j, n) + 1) % n;
    }

    BigInt entry_mask() const { return flip; }

    BigInt exit_mask(int n) const { return flip ^ (BigInt(1) << ((n - 1 + rot) % n)); }
};

/// One in-progress subdivision walk. Tracks the current cell's integer grid
/// coordinates, curve index, and orientation frame.
class Descent {
public:
    explicit Descent(int n) : n_(n), coords_(static_cast<size_t>(n), BigInt(0)) {}

    int dim() const { return n_; }
    int depth() const { return depth_; }
    const BigInt& index() const { return index_; }
    const std::vector<BigInt>& coords() const { return coords_; }
    const Frame& frame() const { return frame_; }

    /// Step into the child with curve rank `rank` (0 <= rank < 2^n).
    void descend_rank(const BigInt& rank) {
        BigInt pos = frame_.apply(gray_code(rank), n_);
        for (int axis = 0; axis < n_; ++axis) {
            coords_[static_cast<size_t>(axis)] <<= 1;
            if (bit_test(pos, static_cast<unsigned>(n_ - 1 - axis))) coords_[static_cast<size_t>(axis)] += 1;
        }
        index_ = (index_ << n_) | rank;
        frame_.descend(rank, n_);
        ++depth_;
    }

    /// Curve rank of the child occupying local position mask `pos`.
    BigInt rank_of_position(const BigInt& pos) const {
        return gray_decode(frame_.apply_inverse(pos, n_), n_);
    }

    /// Among children whose position bit along each axis is restricted to
    /// `allowed[axis]` (bit 0 = low half permitted, bit 1 = high half), find
    /// the one of minimum curve rank. Greedy per rank bit from the top:
    /// each rank bit is fed by exactly one position bit, so choices are
    /// independent and the top-down zero-preference is globally minimal.
    BigInt min_rank_in(const std::vector<unsigned>& allowed) const {
        BigInt rank = 0;
        bool acc = false; // running XOR of chosen gray bits above position i
        for (int i = n_ - 1; i >= 0; --i) {
            int j = (i + frame_.rot) % n_;
            int axis = n_ - 1 - j;
            bool want_gray = acc; // gray bit making rank bit i zero
            bool want_pos = want_gray ^ bit_test(frame_.flip, static_cast<unsigned>(j));
            unsigned opts = allowed[static_cast<size_t>(axis)];
            bool pos_bit = want_pos;
            if (!(opts & (1u << (want_pos ? 1 : 0)))) pos_bit = !want_pos;
            bool gray_bit = pos_bit ^ bit_test(frame_.flip, static_cast<unsigned>(j));
            bool rank_bit = acc ^ gray_bit; // rank = prefix XOR of gray bits from the top
            if (rank_bit) rank |= BigInt(1) << i;
            acc = rank_bit;
        }
        return rank;
    }

private:
    int n_;
    int depth_ = 0;
    BigInt index_;
    std::vector<BigInt> coords_;
    Frame frame_;
};

inline void check_dimension(int n) {
    if (n < 1) throw Error("domain", "dimension must be >= 1");
    if (n > kMaxDimension)
        throw Error("scale", "dimension " + std::to_string(n) + " exceeds supported maximum " +
                                 std::to_string(kMaxDimension));
}

inline CubePoint corner_point(const Descent& d, const BigInt& corner_mask) {
    CubePoint p;
    p.dim = d.dim();
    p.coords.reserve(static_cast<size_t>(d.dim()));
    Rational side = make_rational(d.dim(), pow2(static_cast<unsigned>(d.depth())));
    for (int axis = 0; axis < d.dim(); ++axis) {
        BigInt c = d.coords()[static_cast<size_t>(axis)];
        if (bit_test(corner_mask, static_cast<unsigned>(d.dim() - 1 - axis))) c += 1;
        p.coords.push_back(Rational(c) * side);
    }
    return p;
}

inline CurveCell cell_from_descent(const Descent& d) {
    CurveCell c;
    c.dim = d.dim();
    c.depth = d.depth();
    c.index = d.index();
    c.cell_coords = d.coords();
    c.entry = corner_point(d, d.frame().entry_mask());
    c.exit = corner_point(d, d.frame().exit_mask(d.dim()));
    return c;
}

/// Parameter tracker for the subdivision walk: holds s = a/b in [0, 1]
/// relative to the current cell's subinterval. Each step picks child
/// j = floor(s * 2^n), clamped to the last child when s = 1, and rescales.
struct ParamWalk {
    Descent cells;
    BigInt a;
    BigInt b;

    ParamWalk(int n, const Rational& s) : cells(n), a(numerator(s)), b(denominator(s)) {}

    void step() {
        int n = cells.dim();
        BigInt scaled = a << n;
        BigInt j = scaled / b; // a, b >= 0
        if (j == pow2(static_cast<unsigned>(n))) j -= 1;
        a = scaled - j * b;
        cells.descend_rank(j);
    }
};

} // namespace curve_detail

/// Depth-k cell with curve index `index` (0 <= index < 2^(n*k)).
inline CurveCell cell_of_index(int n, int k, const BigInt& index) {
    curve_detail::check_dimension(n);
    if (k < 0) throw Error("domain", "depth must be >= 0");
    if (index < 0 || index >= pow2(static_cast<unsigned>(n * k)))
        throw Error("domain", "cell index out of range at depth " + std::to_string(k));
    curve_detail::Descent d(n);
    BigInt ones = curve_detail::mask_ones(n);
    for (int level = k - 1; level >= 0; --level) d.descend_rank((index >> (n * level)) & ones);
    return curve_detail::cell_from_descent(d);
}

/// Curve index of the depth-k cell with grid coordinates `cell_coords`
/// (each in [0, 2^k)). Inverse of cell_of_index.
inline BigInt index_of_cell(int n, int k, const std::vector<BigInt>& cell_coords) {
    curve_detail::check_dimension(n);
    if (k < 0) throw Error("domain", "depth must be >= 0");
    if (static_cast<int>(cell_coords.size()) != n)
        throw Error("domain", "expected " + std::to_string(n) + " cell coordinates");
    BigInt limit = pow2(static_cast<unsigned>(k));
    for (const BigInt& c : cell_coords)
        if (c < 0 || c >= limit) throw Error("domain", "cell coordinate out of range at depth " + std::to_string(k));
    curve_detail::Descent d(n);
    for (int level = k - 1; level >= 0; --level) {
        BigInt pos = 0;
        for (int axis = 0; axis < n; ++axis)
            if (bit_test(cell_coords[static_cast<size_t>(axis)], static_cast<unsigned>(level)))
                pos |= BigInt(1) << (n - 1 - axis);
        d.descend_rank(d.rank_of_position(pos));
    }
    return d.index();
}

/// Exact image f_n(t) for dyadic t in [n-1, n]. Every dyadic parameter is a
/// cell corner at some finite depth, so the image is an exact rational point.
inline CubePoint curve_point_exact(int n, const Dyadic& t) {
    curve_detail::check_dimension(n);
    Rational tv = value(t);
    if (tv < n - 1 || tv > n)
        throw Error("domain", "parameter " + format_number(tv) + " outside [" + std::to_string(n - 1) + ", " +
                                  std::to_string(n) + "]");
    Dyadic s = canonical({t.mantissa - (BigInt(n - 1) << t.exponent), t.exponent});
    if (s.mantissa == pow2(s.exponent)) { // s == 1: overall exit corner (n, 0, ..., 0)
        CubePoint p;
        p.dim = n;
        p.coords.assign(static_cast<size_t>(n), Rational(0));
        p.coords[0] = n;
        return p;
    }
    unsigned e = s.exponent;
    int k = static_cast<int>((e + static_cast<unsigned>(n) - 1) / static_cast<unsigned>(n));
    BigInt i = s.mantissa << (static_cast<unsigned>(n * k) - e);
    curve_detail::Descent d(n);
    BigInt ones = curve_detail::mask_ones(n);
    for (int level = k - 1; level >= 0; --level) d.descend_rank((i >> (n * level)) & ones);
    return curve_detail::corner_point(d, d.frame().entry_mask());
}

/// Depth-k cell whose box encloses f_n(t), for arbitrary rational t in
/// [n-1, n]. A parameter on a shared cell boundary resolves to the successor
/// cell; f_n(t) is then that cell's entry corner, still inside the box.
inline CurveCell curve_point(int n, const Rational& t, int k) {
    curve_detail::check_dimension(n);
    if (k < 0) throw Error("domain", "depth must be >= 0");
    if (t < n - 1 || t > n)
        throw Error("domain", "parameter " + format_number(t) + " outside [" + std::to_string(n - 1) + ", " +
                                  std::to_string(n) + "]");
    curve_detail::ParamWalk w(n, t - (n - 1));
    for (int level = 0; level < k; ++level) w.step();
    return curve_detail::cell_from_descent(w.cells);
}

/// Depth-k approximate preimage: the left endpoint of the subinterval of the
/// first (lowest curve rank) depth-k cell whose closed box contains y.
/// Guarantee: sup_dist(f_n(result), y) <= n * 2^-k, since f_n maps the chosen
/// subinterval onto the chosen box and its endpoint into it.
inline Dyadic preimage(int n, const CubePoint& y, int k) {
    curve_detail::check_dimension(n);
    if (k < 0) throw Error("domain", "depth must be >= 0");
    if (y.dim != n) throw Error("domain", "expected a point of dimension " + std::to_string(n));
    if (!in_cube(y)) throw Error("domain", "point outside [0, n]^n");

    curve_detail::Descent d(n);
    // Scaled per-axis comparisons: child coord c' at depth kappa+1 admits y_i
    // iff c' * n * den_i <= num_i * 2^(kappa+1) <= (c'+1) * n * den_i.
    std::vector<BigInt> num(static_cast<size_t>(n)), den(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        num[static_cast<size_t>(i)] = numerator(y.coords[static_cast<size_t>(i)]);
        den[static_cast<size_t>(i)] = denominator(y.coords[static_cast<size_t>(i)]) * n;
    }
    std::vector<unsigned> allowed(static_cast<size_t>(n));
    for (int level = 0; level < k; ++level) {
        for (int axis = 0; axis < n; ++axis) {
            size_t ax = static_cast<size_t>(axis);
            BigInt p = num[ax] << (level + 1);
            BigInt c2 = d.coords()[ax] << 1;
            BigInt lo = c2 * den[ax];
            BigInt mid = (c2 + 1) * den[ax];
            BigInt hi = (c2 + 2) * den[ax];
            unsigned opts = 0;
            if (lo <= p && p <= mid) opts |= 1u;
            if (mid <= p && p <= hi) opts |= 2u;
            if (opts == 0) throw Error("internal", "descent lost the target point");
            allowed[ax] = opts;
        }
        d.descend_rank(d.min_rank_in(allowed));
    }
    BigInt mant = (BigInt(n - 1) << static_cast<unsigned>(n * k)) + d.index();
    return canonical({mant, static_cast<unsigned>(n * k)});
}

} // namespace unimetric
