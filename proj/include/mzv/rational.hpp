#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "mzv/errors.hpp"

namespace mzv {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline bigint binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    bigint r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// 2^k for any integer k (negative gives the dyadic fraction).
inline rational pow2(long k) {
    bigint p = bigint(1) << static_cast<unsigned>(k < 0 ? -k : k);
    return k >= 0 ? rational(p) : rational(1, p);
}

// r^k with the 0^0 = 1 convention; k >= 0.
inline rational pow_rational(const rational& r, long k) {
    rational acc = 1, base = r;
    for (; k > 0; k >>= 1) {
        if (k & 1) acc *= base;
        if (k > 1) base *= base;
    }
    return acc;
}

inline std::string to_string(const rational& r) {
    const bigint num = boost::multiprecision::numerator(r);
    const bigint den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "a" or "a/b" with optional leading '-'.
rational parse_rational(const std::string& text);

}  // namespace mzv
