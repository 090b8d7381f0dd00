#pragma once

#include <gmpxx.h>

#include <string>

namespace rht {

/// Exact rational coefficient used everywhere in the library.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on garbage.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// (-1)^k as an int.
constexpr int sign_power(long k) { return (k % 2 == 0) ? 1 : -1; }

/// t^k for integral k >= 0.
Rational power(const Rational& t, long k);

/// Binomial coefficient as an unsigned 64-bit value (exact for the sizes used here).
unsigned long long binomial(unsigned n, unsigned k);

} // namespace rht
