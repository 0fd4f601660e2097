#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "formscheme/construct.hpp"

namespace formscheme {

/// Sparse weight (or distance) enumerator. Counts are exact rationals so
/// that distance enumerators of non-additive codes are representable; they
/// are integral for every additive code.
struct WeightEnumerator {
    std::uint64_t length = 0;
    std::map<std::uint64_t, BigRat> counts;

    void add(std::uint64_t w, const BigRat& c) {
        if (c == 0) return;
        check(w <= length, errc::inconsistent_system, "weight exceeds code length");
        counts[w] += c;
        if (counts[w] == 0) counts.erase(w);
    }
    BigRat total() const {
        BigRat t = 0;
        for (const auto& [w, c] : counts) t += c;
        return t;
    }
    BigRat at(std::uint64_t w) const {
        auto it = counts.find(w);
        return it == counts.end() ? BigRat(0) : it->second;
    }
    friend bool operator==(const WeightEnumerator& a, const WeightEnumerator& b) {
        return a.length == b.length && a.counts == b.counts;
    }
};

/// The code C(Y) = union of cosets Q + R_q(1,m)^* over Q in Y: length
/// q^m - 1, size q^(m+1) |Y|. For q = 2 the defining set must contain no
/// rank-1 forms (those are linear functions and would degenerate the union).
struct ClassicalCode {
    const Tower* tower = nullptr;
    QuadSet Y;
    std::uint64_t length = 0;
    BigInt size;
};

inline ClassicalCode make_code(const QuadSet& Y) {
    const Field& base = *Y.field;
    if (base.q() == 2)
        for (const auto& qf : Y.members)
            check(classify(qf).r != 1, errc::degenerate_set, "q=2 code with a rank-1 form in the defining set");
    const Tower& t = Tower::get(base.p(), base.k(), std::uint32_t(Y.m));
    ClassicalCode c;
    c.tower = &t;
    c.Y = Y;
    c.length = t.big().q() - 1;
    c.size = big_pow(BigInt(base.q()), std::uint64_t(Y.m + 1)) * BigInt(std::uint64_t(Y.size()));
    return c;
}

namespace detail {

/// Coordinates of every nonzero field element in the tower's polynomial
/// basis, via the trace-dual basis; row x-1 holds the coordinates of x.
inline std::vector<std::vector<felem>> coordinate_table(const Tower& t) {
    auto dual = t.dual_basis(t.polynomial_basis());
    std::vector<std::vector<felem>> out;
    out.reserve(std::size_t(t.big().q() - 1));
    for (std::uint64_t x = 1; x < t.big().q(); ++x) out.push_back(t.coordinates(felem(x), dual));
    return out;
}

}  // namespace detail

/// Weight enumerator of the coset Q + R_q(1,m)^*, by full enumeration of
/// the q^(m+1) affine offsets.
inline WeightEnumerator coset_enum_brute(const Tower& t, const QuadForm& qf, std::uint64_t cap = global_cap()) {
    const Field& E = t.big();
    const Field& B = t.base();
    std::uint64_t n = E.q() - 1;
    check_cap((n + 1) * (n + 1), cap, "coset_enum_brute");  // one value pass over F* per affine part a
    auto coords = detail::coordinate_table(t);
    std::vector<felem> qv(std::size_t(n), 0);
    for (std::uint64_t x = 1; x <= n; ++x) qv[std::size_t(x - 1)] = qf.eval(coords[std::size_t(x - 1)]);
    WeightEnumerator we;
    we.length = n;
    std::vector<std::uint64_t> bins(std::size_t(B.q()));
    for (std::uint64_t a = 0; a < E.q(); ++a) {
        std::fill(bins.begin(), bins.end(), 0);
        for (std::uint64_t x = 1; x <= n; ++x) {
            felem v = B.add(qv[std::size_t(x - 1)], t.rel_trace(E.mul(felem(a), felem(x))));
            bins[v]++;
        }
        for (felem c = 0; c < B.q(); ++c) we.add(n - bins[B.neg(c)], 1);
    }
    check(we.total() == BigRat(big_pow(BigInt(B.q()), std::uint64_t(t.m()) + 1)), errc::inconsistent_system,
          "coset census mass mismatch");
    return we;
}

/// The weight enumerator of R_q(1,m)^* itself (the coset of the zero form).
inline WeightEnumerator rm1_star_enum(int m, const Field& base, std::uint64_t cap = global_cap()) {
    const Tower& t = Tower::get(base.p(), base.k(), std::uint32_t(m));
    return coset_enum_brute(t, QuadForm(base, m), cap);
}

/// Streams the q^(m+1) words of R_q(1,m)^*: x -> Tr_m(ax) + c on the
/// nonzero field elements in encoding order.
template <typename Fn>
void for_each_rm1_word(const Tower& t, Fn&& fn) {
    const Field& E = t.big();
    const Field& B = t.base();
    std::uint64_t n = E.q() - 1;
    std::vector<felem> word(std::size_t(n), 0);
    for (std::uint64_t a = 0; a < E.q(); ++a)
        for (felem c = 0; c < B.q(); ++c) {
            for (std::uint64_t x = 1; x <= n; ++x) word[std::size_t(x - 1)] = B.add(t.rel_trace(E.mul(felem(a), felem(x))), c);
            fn(static_cast<const std::vector<felem>&>(word));
        }
}

/// Theoretical weight enumerator omega_i of any coset Q + R_q(1,m)^* with
/// Q of class i: six weights around q^(m-1)(q-1), with coefficients read
/// off the rank and type. Terms with zero coefficient are omitted.
inline WeightEnumerator omega(const OrbitIndex& i, int m, std::uint64_t q) {
    check(i.admissible(m), errc::inadmissible_index, "omega: index " + i.str() + " inadmissible for m=" + std::to_string(m));
    int s = i.s();
    auto qp = [&](int e) { return rat_pow(q, e); };
    BigRat qm1 = qp(m - 1), qms1 = qp(m - s - 1);
    std::vector<std::pair<BigRat, BigRat>> terms;  // (weight, count)
    if (!i.even_rank()) {
        BigRat q2s = qp(2 * s), qs = qp(s);
        terms = {
            {qm1 * (q - 1) - qms1 - 1, BigRat(q - 1) * (q2s * (q - 1) - qs) / 2},
            {qm1 * (q - 1) - qms1, BigRat(q - 1) * (q2s + qs) / 2},
            {qm1 * (q - 1) - 1, BigRat(q - 1) * (qp(m) - q2s * (q - 1))},
            {qm1 * (q - 1), qp(m) - q2s * (q - 1)},
            {qm1 * (q - 1) + qms1 - 1, BigRat(q - 1) * (q2s * (q - 1) + qs) / 2},
            {qm1 * (q - 1) + qms1, BigRat(q - 1) * (q2s - qs) / 2},
        };
    } else {
        int tau = i.tau;
        BigRat q2s1 = qp(2 * s - 1), qs1 = qp(s - 1);
        terms = {
            {(qm1 - tau * qms1) * (q - 1) - 1, BigRat(q - 1) * (q2s1 - tau * qs1)},
            {(qm1 - tau * qms1) * (q - 1), q2s1 + BigRat(tau) * qs1 * (q - 1)},
            {qm1 * (q - 1) - 1, BigRat(q - 1) * (qp(m) - qp(2 * s))},
            {qm1 * (q - 1), qp(m) - qp(2 * s)},
            {qm1 * (q - 1) + tau * qms1 - 1, BigRat(q - 1) * (q2s1 * (q - 1) + tau * qs1)},
            {qm1 * (q - 1) + tau * qms1, BigRat(q - 1) * (q2s1 - tau * qs1)},
        };
    }
    WeightEnumerator we;
    we.length = 1;
    for (int t = 0; t < m; ++t) we.length *= q;
    we.length -= 1;
    for (const auto& [w, c] : terms) {
        if (c == 0) continue;
        check(c > 0, errc::inconsistent_system, "omega: negative coefficient");
        BigInt count = to_integer(c, "omega coefficient");
        BigInt weight = to_integer(w, "omega weight");
        check(weight >= 0, errc::inconsistent_system, "omega: negative weight with nonzero coefficient");
        we.add(weight.convert_to<std::uint64_t>(), BigRat(count));
    }
    check(we.total() == BigRat(big_pow(BigInt(q), std::uint64_t(m) + 1)), errc::inconsistent_system,
          "omega(1) != q^(m+1)");
    return we;
}

/// Distance enumerator of C(Y) from the inner distribution of Y:
/// sum_i a_i omega_i(z).
inline WeightEnumerator dist_enum_theory(const QuadSet& Y, std::uint64_t cap = global_cap()) {
    const Field& base = *Y.field;
    if (base.q() == 2)
        for (const auto& qf : Y.members)
            check(classify(qf).r != 1, errc::degenerate_set, "q=2 code with a rank-1 form in the defining set");
    InnerDist a = inner_dist(Y, cap);
    WeightEnumerator out;
    out.length = 1;
    for (int t = 0; t < Y.m; ++t) out.length *= base.q();
    out.length -= 1;
    for (const auto& [i, ai] : a.v) {
        if (ai == 0) continue;
        WeightEnumerator wi = omega(i, Y.m, base.q());
        for (const auto& [w, c] : wi.counts) out.add(w, ai * c);
    }
    check(out.total() == BigRat(big_pow(BigInt(base.q()), std::uint64_t(Y.m) + 1) * BigInt(std::uint64_t(Y.size()))),
          errc::inconsistent_system, "distance enumerator mass mismatch");
    return out;
}

/// Distance enumerator of C(Y) by brute force. For additive Y this is the
/// weight census of all q^(m+1) |Y| codewords; for general Y the full
/// pairwise distance census runs under a much smaller cap.
inline WeightEnumerator dist_enum_brute(const ClassicalCode& c, std::uint64_t cap = std::uint64_t(1) << 20) {
    const Tower& t = *c.tower;
    if (is_additive(c.Y)) {
        check(BigInt(cap) >= c.size, errc::cap_exceeded, "dist_enum_brute: code size " + c.size.str() + " exceeds cap");
        WeightEnumerator out;
        out.length = c.length;
        for (const auto& qf : c.Y.members) {
            WeightEnumerator coset = coset_enum_brute(t, qf);
            for (const auto& [w, n] : coset.counts) out.add(w, n);
        }
        check(out.total() == BigRat(c.size), errc::inconsistent_system, "weight census mass mismatch");
        return out;
    }
    check(BigInt(cap / 256) >= c.size, errc::cap_exceeded, "dist_enum_brute: non-additive census needs a smaller code");
    // materialize and take all ordered pairs
    std::vector<std::vector<felem>> words;
    auto coords = detail::coordinate_table(t);
    const Field& B = t.base();
    const Field& E = t.big();
    for (const auto& qf : c.Y.members) {
        std::vector<felem> qv(std::size_t(c.length), 0);
        for (std::uint64_t x = 1; x <= c.length; ++x) qv[std::size_t(x - 1)] = qf.eval(coords[std::size_t(x - 1)]);
        for (std::uint64_t a = 0; a < E.q(); ++a)
            for (felem cc = 0; cc < B.q(); ++cc) {
                std::vector<felem> w(std::size_t(c.length), 0);
                for (std::uint64_t x = 1; x <= c.length; ++x)
                    w[std::size_t(x - 1)] = B.add(B.add(qv[std::size_t(x - 1)], t.rel_trace(E.mul(felem(a), felem(x)))), cc);
                words.push_back(std::move(w));
            }
    }
    WeightEnumerator out;
    out.length = c.length;
    BigRat norm(1, std::uint64_t(words.size()));
    for (const auto& w1 : words)
        for (const auto& w2 : words) {
            std::uint64_t dist = 0;
            for (std::size_t x = 0; x < w1.size(); ++x) dist += w1[x] != w2[x];
            out.add(dist, norm);
        }
    return out;
}

/// Minimum distance of C(Y) (= minimum nonzero weight for additive Y).
inline std::uint64_t min_distance(const ClassicalCode& c, std::uint64_t cap = std::uint64_t(1) << 20) {
    WeightEnumerator we = dist_enum_brute(c, cap);
    for (const auto& [w, n] : we.counts)
        if (w > 0) return w;
    raise(errc::inconsistent_system, "min_distance: no nonzero weights");
}

/// Designed distance q^(m-1)(q-1) - q^(m-delta-1) - 1 of the codes built
/// from maximal d-codes with delta = floor(d/2).
inline std::uint64_t designed_distance(int m, std::uint64_t q, int delta) {
    check(delta >= 1 && 2 * delta <= m, errc::bad_argument, "designed_distance: need 1 <= delta <= m/2");
    std::uint64_t qm1 = 1;
    for (int t = 0; t < m - 1; ++t) qm1 *= q;
    std::uint64_t qmd1 = 1;
    for (int t = 0; t < m - delta - 1; ++t) qmd1 *= q;
    return qm1 * (q - 1) - qmd1 - 1;
}

}  // namespace formscheme
