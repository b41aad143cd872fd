#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qb {

/// Exact rational coefficients over arbitrary-precision integers.
/// mpq_class keeps values in lowest terms with positive denominator.
using Rational = mpq_class;

inline Rational rat(std::int64_t num, std::int64_t den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool rat_is_one(const Rational& r) { return r == 1; }

inline int rat_cmp(const Rational& a, const Rational& b) { return cmp(a, b); }

/// c^e for integer e (e < 0 inverts; 0^negative is an error).
inline Rational rat_pow(const Rational& base, std::int64_t e) {
    if (e == 0) return Rational(1);
    if (rat_is_zero(base)) {
        if (e < 0) throw std::domain_error("rat_pow: zero to a negative power");
        return Rational(0);
    }
    Rational b = e > 0 ? base : Rational(1) / base;
    std::uint64_t n = e > 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

/// "p/q" with q omitted when 1.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

} // namespace qb
