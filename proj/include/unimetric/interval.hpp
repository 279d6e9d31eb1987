#pragma once

#include <algorithm>
#include <string>

#include "errors.hpp"
#include "numbers.hpp"

namespace unimetric {

/// Closed interval [lo, hi] enclosing a distance value. Operations are
/// outward-sound: the true value of f(x, y) lies in f(enclosure(x),
/// enclosure(y)) whenever x, y lie in their enclosures. Combinators preserve
/// lo <= hi; only external construction needs the checked factory.
struct DistInterval {
    Rational lo;
    Rational hi;
};

inline DistInterval make_interval(Rational lo, Rational hi) {
    if (lo > hi) throw Error("domain", "empty interval: [" + format_number(lo) + ", " + format_number(hi) + "]");
    return {std::move(lo), std::move(hi)};
}

inline DistInterval exact_interval(Rational v) { return {v, v}; }

inline Rational width(const DistInterval& iv) { return iv.hi - iv.lo; }

inline bool is_exact(const DistInterval& iv) { return iv.lo == iv.hi; }

inline bool contains(const DistInterval& iv, const Rational& v) { return iv.lo <= v && v <= iv.hi; }

inline bool operator==(const DistInterval& a, const DistInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

inline DistInterval operator+(const DistInterval& a, const DistInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline DistInterval shift(const DistInterval& iv, const Rational& s) {
    return {iv.lo + s, iv.hi + s};
}

inline DistInterval interval_max(const DistInterval& a, const DistInterval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline DistInterval interval_min(const DistInterval& a, const DistInterval& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline std::string format_interval(const DistInterval& iv) {
    if (is_exact(iv)) return format_number(iv.lo);
    return "[" + format_number(iv.lo) + ", " + format_number(iv.hi) + "]";
}

} // namespace unimetric
