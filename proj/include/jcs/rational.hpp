#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace jcs {

using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision exact rational. cpp_rational keeps the canonical
/// reduced form (gcd 1, positive denominator) after every operation.
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(num) / Rat(den); }

inline std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Falling factorial m(m-1)...(m-j+1), exact, m may be negative.
inline Rat rat_falling(long long m, int j) {
    Rat acc = 1;
    for (int i = 0; i < j; ++i) acc *= Rat(m - i);
    return acc;
}

/// Generalized binomial coefficient C(m, j) for integer m (possibly
/// negative) and j >= 0.
inline Rat rat_binom(long long m, int j) {
    if (j < 0) return 0;
    Rat acc = rat_falling(m, j);
    for (int i = 2; i <= j; ++i) acc /= i;
    return acc;
}

inline Rat rat_factorial(int n) {
    Rat acc = 1;
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

} // namespace jcs
