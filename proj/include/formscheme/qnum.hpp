#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "formscheme/bigint.hpp"

namespace formscheme {

/// q^2-analog of the binomial coefficient: prod_{i<k} (q^2n - q^2i)/(q^2k - q^2i).
/// Zero when k < 0 or (n >= 0 and k > n). The division is performed exactly
/// and asserted; a non-integral quotient signals index misuse upstream.
inline BigInt qbinom2(std::int64_t n, std::int64_t k, std::uint64_t q) {
    if (k < 0 || (n >= 0 && k > n)) return 0;
    check(n >= 0, errc::bad_argument, "qbinom2: negative upper index");
    BigInt q2 = BigInt(q) * q;
    BigInt num = 1, den = 1;
    BigInt q2n = big_pow(q2, std::uint64_t(n)), q2k = big_pow(q2, std::uint64_t(k)), q2i = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= q2n - q2i;
        den *= q2k - q2i;
        q2i *= q2;
    }
    return exact_div(num, den, "qbinom2");
}

namespace detail {

/// c = q^(m(m-1)/(2n)) with n = floor(m/2); the exponent is m-1 for even m
/// and m for odd m. For m <= 1 the value is never used (only c^0 appears).
inline BigInt krawtchouk_base(std::int64_t m, std::uint64_t q) {
    if (m <= 1) return 1;
    return big_pow(BigInt(q), std::uint64_t(m % 2 == 0 ? m - 1 : m));
}

}  // namespace detail

/// Generalized-Krawtchouk number F^(m)_r(s): the alternating sum
/// sum_j (-1)^(r-j) q^((r-j)(r-j-1)) [n-j, n-r] [n-s, j] c^j over 0 <= j <= r,
/// with n = floor(m/2); zero outside 0 <= r, s <= n.
inline BigInt f_num(std::int64_t m, std::int64_t r, std::int64_t s, std::uint64_t q) {
    check(m >= 0, errc::bad_argument, "f_num: negative m");
    std::int64_t n = m / 2;
    if (r < 0 || r > n || s < 0 || s > n) return 0;
    BigInt c = detail::krawtchouk_base(m, q);
    BigInt acc = 0, cj = 1;
    for (std::int64_t j = 0; j <= r; ++j) {
        BigInt term = big_pow(BigInt(q), std::uint64_t((r - j) * (r - j - 1))) * qbinom2(n - j, n - r, q) * qbinom2(n - s, j, q) * cj;
        if ((r - j) % 2)
            acc -= term;
        else
            acc += term;
        cj *= c;
    }
    return acc;
}

/// Square table F[r][s] = F^(m)_r(s) for 0 <= r, s <= floor(m/2), checked
/// against the orthogonality relation F*F = q^(m(m-1)/2) * I on construction.
struct FMatrix {
    std::int64_t m;
    std::uint64_t q;
    std::vector<std::vector<BigInt>> t;

    const BigInt& at(std::int64_t r, std::int64_t s) const { return t[std::size_t(r)][std::size_t(s)]; }
    std::int64_t n() const { return m / 2; }
};

inline const FMatrix& f_matrix(std::int64_t m, std::uint64_t q) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, std::uint64_t>, FMatrix> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, q);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    check(m >= 0, errc::bad_argument, "f_matrix: negative m");
    std::int64_t n = m / 2;
    FMatrix fm{m, q, {}};
    fm.t.assign(std::size_t(n + 1), std::vector<BigInt>(std::size_t(n + 1)));
    for (std::int64_t r = 0; r <= n; ++r)
        for (std::int64_t s = 0; s <= n; ++s) fm.t[std::size_t(r)][std::size_t(s)] = f_num(m, r, s, q);
    BigInt scale = big_pow(BigInt(q), std::uint64_t(m * (m - 1) / 2));
    for (std::int64_t r = 0; r <= n; ++r)
        for (std::int64_t p = 0; p <= n; ++p) {
            BigInt dot = 0;
            for (std::int64_t s = 0; s <= n; ++s) dot += fm.at(r, s) * fm.at(s, p);
            check(dot == (r == p ? scale : BigInt(0)), errc::orthogonality_violation, "f_matrix: orthogonality self-check failed");
        }
    return cache.emplace(key, std::move(fm)).first->second;
}

}  // namespace formscheme
