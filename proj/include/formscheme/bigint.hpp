#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "formscheme/common.hpp"

namespace formscheme {

/// Exact arbitrary-precision integers and rationals. Valencies and
/// eigenvalues overflow 64 bits already at moderate (m, q).
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, std::uint64_t e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// q^e for possibly negative e, as an exact rational.
inline BigRat rat_pow(std::uint64_t q, std::int64_t e) {
    BigInt v = big_pow(BigInt(q), static_cast<std::uint64_t>(e < 0 ? -e : e));
    return e < 0 ? BigRat(1, v) : BigRat(v);
}

/// Exact division; raises if the quotient is not integral.
inline BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    check(den != 0, errc::division_by_zero, std::string(what) + ": zero divisor");
    BigInt q = num / den;
    check(q * den == num, errc::non_integral_sum, std::string(what) + ": inexact division");
    return q;
}

/// Rational -> integer with an integrality check.
inline BigInt to_integer(const BigRat& r, const char* what) {
    check(boost::multiprecision::denominator(r) == 1, errc::non_integral_sum,
          std::string(what) + ": value " + r.str() + " is not an integer");
    return boost::multiprecision::numerator(r);
}

inline std::string rat_str(const BigRat& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace formscheme
