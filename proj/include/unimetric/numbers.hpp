#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace unimetric {

// Every quantity in this library is exact. BigInt is an arbitrary-precision
// signed integer, Rational its quotient field; Rational is kept in lowest
// terms with a positive denominator by the backend.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

/// num/den with sign normalized to the numerator. Throws on den == 0; the
/// backend's own two-argument constructor rejects negative denominators.
inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw Error("parse", "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

/// Floor division, quotient rounded toward -infinity. Requires den > 0.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den; // truncates toward zero
    if (num % den != 0 && num < 0) --q;
    return q;
}

inline BigInt rational_floor(const Rational& x) {
    return floor_div(numerator(x), denominator(x));
}

inline BigInt rational_ceil(const Rational& x) {
    return -floor_div(-numerator(x), denominator(x));
}

namespace detail {

inline BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

/// Base-10 digit string to BigInt. The BigInt string constructor follows the
/// C literal convention (leading 0 means octal), so strip leading zeros.
inline BigInt from_digits(std::string_view s) {
    size_t b = s.find_first_not_of('0');
    if (b == std::string_view::npos) return BigInt(0);
    return BigInt{std::string(s.substr(b))};
}

} // namespace detail

/// Exact parse. Accepted forms: integer "42", fraction "p/q" (q > 0, reduced
/// on construction), decimal "0.3" / "1." / ".5", and scientific "2.5e3",
/// "1e-9". Decimal and scientific literals denote exact powers of ten; no
/// floating-point intermediary is involved. Leading sign and surrounding
/// whitespace allowed. Anything else is a parse error ("malformed literal").
inline Rational parse_number(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw Error("parse", "malformed literal: '" + std::string(text) + "'");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view ns = s.substr(0, slash);
        std::string_view ds = s.substr(slash + 1);
        if (!detail::all_digits(ns) || !detail::all_digits(ds))
            throw Error("parse", "malformed literal: '" + std::string(text) + "'");
        BigInt num = detail::from_digits(ns);
        BigInt den = detail::from_digits(ds);
        if (negative) num = -num;
        return make_rational(num, den); // den == 0 reported there
    }

    std::string_view mant = s;
    long exp10 = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        mant = s.substr(0, epos);
        std::string_view es = s.substr(epos + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!detail::all_digits(es) || es.size() > 5)
            throw Error("parse", "malformed literal: '" + std::string(text) + "'");
        exp10 = std::stol(std::string(es));
        if (eneg) exp10 = -exp10;
        if (exp10 > 65536 || exp10 < -65536)
            throw Error("parse", "exponent out of range: '" + std::string(text) + "'");
    }

    std::string_view ip = mant;
    std::string_view fp;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
        ip = mant.substr(0, dot);
        fp = mant.substr(dot + 1);
    }
    if (ip.empty() && fp.empty())
        throw Error("parse", "malformed literal: '" + std::string(text) + "'");
    if ((!ip.empty() && !detail::all_digits(ip)) || (!fp.empty() && !detail::all_digits(fp)))
        throw Error("parse", "malformed literal: '" + std::string(text) + "'");

    std::string digits = std::string(ip) + std::string(fp);
    BigInt num = detail::from_digits(digits);
    if (negative) num = -num;

    long scale = exp10 - static_cast<long>(fp.size());
    if (scale >= 0) return Rational(num * detail::pow10(static_cast<unsigned>(scale)));
    return make_rational(num, detail::pow10(static_cast<unsigned>(-scale)));
}

/// Canonical text form: integers as plain decimal ("5", "-3"), everything
/// else as "p/q" in lowest terms with q > 0. parse_number round-trips it.
inline std::string format_number(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

} // namespace unimetric
