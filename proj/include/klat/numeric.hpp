#pragma once

// Exact arithmetic primitives: arbitrary-precision integers and rationals,
// plus the handful of integer helpers (isqrt, floor division, fractional
// parts) the rest of the library leans on.  No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace klat {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// Floor of a/b for b != 0 (rounds towards -infinity, unlike cpp_int's /).
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    return -floor_div(-a, b);
}

// Nonnegative remainder a mod b for b > 0.
inline Integer pos_mod(const Integer& a, const Integer& b) {
    Integer r = a % b;
    if (r < 0) r += b;
    return r;
}

// Largest s >= 0 with s*s <= n; exact, n >= 0.
inline Integer isqrt(const Integer& n) {
    return boost::multiprecision::sqrt(n);
}

inline Integer floor_rat(const Rational& r) {
    return floor_div(numerator(r), denominator(r));
}

// Fractional part {r} in [0, 1).
inline Rational frac(const Rational& r) {
    return r - Rational(floor_rat(r));
}

// Canonical representative of r mod 2Z in [0, 2).
inline Rational mod_two(const Rational& r) {
    Rational half = r / 2;
    return 2 * frac(half);
}

// Reduced-fraction rendering: "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline long long to_int64(const Integer& n) {
    return n.convert_to<long long>();
}

}  // namespace klat
