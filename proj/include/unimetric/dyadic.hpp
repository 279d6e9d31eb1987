#pragma once

#include <string>

#include "errors.hpp"
#include "numbers.hpp"

namespace unimetric {

/// Exact dyadic rational mantissa * 2^-exponent. Canonical form: mantissa odd,
/// or exponent == 0. Curve parameters live here: every cell endpoint at
/// refinement depth k is a dyadic with exponent <= n*k.
struct Dyadic {
    BigInt mantissa = 0;
    unsigned exponent = 0;
};

inline Dyadic canonical(Dyadic d) {
    if (d.mantissa == 0) return {0, 0};
    bool neg = d.mantissa < 0;
    BigInt a = neg ? BigInt(-d.mantissa) : d.mantissa;
    unsigned e = d.exponent;
    while (e > 0 && (a & 1) == 0) {
        a >>= 1;
        --e;
    }
    return {neg ? BigInt(-a) : a, e};
}

inline Rational value(const Dyadic& d) { return make_rational(d.mantissa, pow2(d.exponent)); }

inline Dyadic dyadic_from_int(const BigInt& n) { return {n, 0}; }

inline bool operator==(const Dyadic& a, const Dyadic& b) {
    Dyadic ca = canonical(a), cb = canonical(b);
    return ca.mantissa == cb.mantissa && ca.exponent == cb.exponent;
}

inline bool operator<(const Dyadic& a, const Dyadic& b) { return value(a) < value(b); }

/// True iff x has a power-of-two denominator (in lowest terms).
inline bool is_dyadic(const Rational& x) {
    const BigInt& den = denominator(x);
    if (den == 1) return true;
    return lsb(den) == msb(den);
}

/// Exact conversion; "domain" error when x is not dyadic.
inline Dyadic to_dyadic(const Rational& x) {
    if (!is_dyadic(x)) throw Error("domain", "not a dyadic rational: " + format_number(x));
    const BigInt& den = denominator(x);
    unsigned e = den == 1 ? 0u : static_cast<unsigned>(lsb(den));
    return canonical({numerator(x), e});
}

/// Largest dyadic with exponent <= depth that does not exceed x:
/// floor(x * 2^depth) / 2^depth. Satisfies 0 <= x - result < 2^-depth.
inline Dyadic to_dyadic_within(const Rational& x, unsigned depth) {
    BigInt scaled = floor_div(numerator(x) << depth, denominator(x));
    return canonical({scaled, depth});
}

inline std::string format_dyadic(const Dyadic& d) { return format_number(value(d)); }

} // namespace unimetric
