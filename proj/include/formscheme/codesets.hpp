#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "formscheme/scheme.hpp"

namespace formscheme {

/// A subset of Q(m,q) or S(m,q).
template <typename FormT>
struct FormSet {
    const Field* field = nullptr;
    int m = 0;
    std::vector<FormT> members;

    static constexpr FormKind kind = FormT::kind;
    std::uint64_t q() const { return field->q(); }
    std::size_t size() const { return members.size(); }
};

using QuadSet = FormSet<QuadForm>;
using SymSet = FormSet<SymForm>;

template <typename FormT>
FormSet<FormT> make_form_set(const Field& f, int m, std::vector<FormT> members) {
    for (const auto& x : members)
        check(x.field == &f && x.m == m, errc::dimension_mismatch, "form set members must share field and dimension");
    std::set<std::vector<felem>> distinct;
    for (const auto& x : members) distinct.insert(x.coeffs());
    check(distinct.size() == members.size(), errc::bad_argument, "form set members must be distinct");
    return FormSet<FormT>{&f, m, std::move(members)};
}

namespace detail {

template <typename FormT>
std::vector<felem> fp_coords_of(const FormT& x, const Field& f) {
    std::vector<felem> out;
    out.reserve(x.coeffs().size() * f.k());
    for (felem v : x.coeffs())
        for (std::uint32_t d = 0; d < f.k(); ++d) {
            out.push_back(v % f.p());
            v /= f.p();
        }
    return out;
}

}  // namespace detail

/// True iff X is a subgroup of (X(m,q), +): since members are distinct, it
/// suffices that |X| = p^rank of the F_p-span of the members.
template <typename FormT>
bool is_additive(const FormSet<FormT>& X) {
    if (X.members.empty()) return false;
    const Field& f = *X.field;
    RowSpan span(Field::get(f.p(), 1), X.m * X.m * int(f.k()));
    for (const auto& x : X.members) span.insert(detail::fp_coords_of(x, f));
    return big_pow(BigInt(f.p()), std::uint64_t(span.rank())) == BigInt(std::uint64_t(X.members.size()));
}

/// Exact distribution over the orbit index set.
struct Dist {
    int m = 0;
    std::map<OrbitIndex, BigRat> v;

    BigRat at(const OrbitIndex& i) const {
        auto it = v.find(i);
        return it == v.end() ? BigRat(0) : it->second;
    }
    void add(const OrbitIndex& i, const BigRat& x) {
        if (x != 0) v[i] += x;
    }
    BigRat total() const {
        BigRat t = 0;
        for (const auto& [i, x] : v) t += x;
        return t;
    }
    friend bool operator==(const Dist& a, const Dist& b) {
        if (a.m != b.m) return false;
        for (const auto& i : orbit_indices(a.m))
            if (a.at(i) != b.at(i)) return false;
        return true;
    }
};

using InnerDist = Dist;
using DualDist = Dist;

/// Inner distribution a_i = |(X x X) cap R_i| / |X|. Additive sets are just
/// classified member by member; general sets classify all ordered differences.
template <typename FormT>
InnerDist inner_dist(const FormSet<FormT>& X, std::uint64_t cap = global_cap()) {
    check(!X.members.empty(), errc::bad_argument, "inner_dist: empty set");
    InnerDist d;
    d.m = X.m;
    if (is_additive(X)) {
        for (const auto& x : X.members) d.add(classify(x), 1);
        return d;
    }
    std::uint64_t pairs = std::uint64_t(X.size()) * X.size();
    check_cap(pairs, cap, "inner_dist: ordered-pair classification");
    BigRat w(1, std::uint64_t(X.size()));
    for (const auto& x : X.members)
        for (const auto& y : X.members) d.add(classify(form_sub(x, y)), w);
    return d;
}

/// Dual inner distribution a'_k = sum_i Q_k(i) a_i, using the Q-numbers of
/// the scheme the set lives in. Nonnegativity is a theorem; a negative entry
/// signals a bug and raises.
inline DualDist dual_dist(FormKind kind, const InnerDist& inner, std::uint64_t q) {
    DualDist out;
    out.m = inner.m;
    auto index = orbit_indices(inner.m);
    for (const auto& k : index) {
        BigRat acc = 0;
        for (const auto& i : index) {
            BigRat a = inner.at(i);
            if (a == 0) continue;
            BigInt qn = kind == FormKind::quadratic ? q_number(k, i, inner.m, q) : p_number(k, i, inner.m, q);
            acc += BigRat(qn) * a;
        }
        check(acc >= 0, errc::negative_dual, "dual_dist: negative coefficient at " + k.str());
        out.add(k, acc);
    }
    return out;
}

/// Indices of I_l: odd ranks 1..l and even ranks 2..l (both types).
inline std::vector<OrbitIndex> index_set_upto(int m, int l) {
    std::vector<OrbitIndex> out;
    for (const auto& i : orbit_indices(m))
        if (i.r >= 1 && i.r <= l) out.push_back(i);
    return out;
}

inline bool is_d_code(const InnerDist& inner, int d) {
    check(d >= 1, errc::bad_argument, "d must be at least 1");
    for (const auto& i : index_set_upto(inner.m, d - 1))
        if (inner.at(i) != 0) return false;
    return true;
}

inline bool is_t_design(const DualDist& dual, int t) {
    check(t >= 0, errc::bad_argument, "t must be nonnegative");
    for (const auto& k : index_set_upto(dual.m, t))
        if (dual.at(k) != 0) return false;
    return true;
}

template <typename FormT>
bool is_d_code(const FormSet<FormT>& X, int d, std::uint64_t cap = global_cap()) {
    return is_d_code(inner_dist(X, cap), d);
}

template <typename FormT>
bool is_t_design(const FormSet<FormT>& X, int t, std::uint64_t cap = global_cap()) {
    return is_t_design(dual_dist(X.kind, inner_dist(X, cap), X.q()), t);
}

/// Largest t such that the dual distribution vanishes on I_t.
inline int design_degree(const DualDist& dual) {
    int t = 0;
    while (t < dual.m && is_t_design(dual, t + 1)) ++t;
    return t;
}

// --------------------------------------------------------------------------
// Size bounds for d-codes.

enum class BoundVariant { general, additive, elliptic };

/// Tight bound on |X| for a d-code in the chosen space. The even-d cases of
/// the symmetric scheme (and of the quadratic scheme for odd q) are proved
/// only for additive sets; requesting the general variant there raises
/// unsupported_case. The elliptic variant needs m and d even.
inline BigInt size_bound(FormKind kind, int m, std::uint64_t q, int d, BoundVariant variant) {
    check(d >= 1 && d <= m, errc::bad_argument, "size_bound: need 1 <= d <= m");
    auto qpow = [&](int e) { return big_pow(BigInt(q), std::uint64_t(e)); };
    if (variant == BoundVariant::elliptic) {
        check(kind == FormKind::quadratic, errc::unsupported_case, "elliptic bound applies to quadratic forms");
        check(m % 2 == 0 && d % 2 == 0, errc::parity_mismatch, "elliptic bound needs m and d even");
        return qpow(m * (m - d + 1) / 2);
    }
    bool self_dual_side = kind == FormKind::symmetric || q % 2 == 1;
    if (self_dual_side) {
        if (d % 2 == 0 && variant != BoundVariant::additive)
            raise(errc::unsupported_case,
                  "no bound theorem covers non-additive even-d codes in this scheme; use the additive variant");
        return (m - d) % 2 == 0 ? qpow(m * (m - d + 2) / 2) : qpow((m + 1) * (m - d + 1) / 2);
    }
    // quadratic scheme, even q: holds for arbitrary subsets
    if (m % 2 == 1 && d % 2 == 1) return qpow(m * (m - d + 2) / 2);
    if (m % 2 == 0 && d % 2 == 1) return qpow((m + 1) * (m - d + 1) / 2);
    if (m % 2 == 0 && d % 2 == 0) return qpow((m - 1) * (m - d + 2) / 2);
    return qpow(m * (m - d + 1) / 2);
}

// --------------------------------------------------------------------------
// Inner distributions of maximal codes.

enum class MaxCase { quad_odd_m_odd_d, quad_even_m_odd_d, quad_even_q_even_d_partial, elliptic };

/// Inner distribution (or, in the even-d case, the partial aggregates
/// B_s = a_{2s,1} + a_{2s,-1} + a_{2s+1}) of a maximal d-code with the given
/// parameters.
struct TheoreticalDist {
    bool partial = false;
    InnerDist full;                  // when !partial
    std::map<int, BigRat> b_aggregates;  // when partial: s -> B_s
};

inline TheoreticalDist theoretical_inner_dist(MaxCase mcase, int m, std::uint64_t q, int d) {
    check(d >= 1 && d <= m, errc::bad_argument, "theoretical_inner_dist: need 1 <= d <= m");
    TheoreticalDist out;
    out.full.m = m;
    auto qb = [&](std::int64_t a, std::int64_t b) { return BigRat(qbinom2(a, b, q)); };
    auto qp = [&](std::int64_t e) { return rat_pow(q, e); };

    switch (mcase) {
        case MaxCase::quad_odd_m_odd_d: {
            check(m % 2 == 1 && d % 2 == 1, errc::parity_mismatch, "case needs m and d odd");
            int n = (m - 1) / 2, delta = (d - 1) / 2;
            out.full.add(OrbitIndex::zero(), 1);
            auto tail_sum = [&](int s) {
                BigRat acc = 0;
                for (int j = 0; j <= s - delta - 1; ++j) {
                    BigRat term = qp(std::int64_t(j) * (j - 1)) * qb(s, j) * (qp(std::int64_t(2 * n + 1) * (s - delta - j)) - 1);
                    acc += (j % 2 ? -term : term);
                }
                return acc;
            };
            for (int s = 1; 2 * s - 1 <= m; ++s) out.full.add(OrbitIndex::odd(2 * s - 1), qb(n, s - 1) * tail_sum(s));
            for (int s = 1; 2 * s <= m; ++s)
                for (int tau : {+1, -1})
                    out.full.add(OrbitIndex::even(2 * s, tau),
                                 BigRat(1, 2) * qp(s) * (qp(s) + tau) * qb(n, s) * tail_sum(s));
            check(BigRat(size_bound(FormKind::quadratic, m, q, d, BoundVariant::general)) == out.full.total(),
                  errc::inconsistent_system, "theoretical distribution mass mismatch");
            return out;
        }
        case MaxCase::quad_even_m_odd_d: {
            check(m % 2 == 0 && d % 2 == 1, errc::parity_mismatch, "case needs m even and d odd");
            int n = m / 2, delta = (d - 1) / 2;
            out.full.add(OrbitIndex::zero(), 1);
            for (int s = 1; 2 * s - 1 <= m; ++s) {
                BigRat acc = 0;
                for (int j = 0; j <= s - delta - 1; ++j) {
                    BigRat term = qp(std::int64_t(j) * (j - 1)) * qb(s - 1, j) *
                                  qp(std::int64_t(2 * n + 1) * (s - delta - j - 1) + 2 * j);
                    acc += (j % 2 ? -term : term);
                }
                out.full.add(OrbitIndex::odd(2 * s - 1), (qp(2 * s) - 1) * qb(n, s) * acc);
            }
            for (int s = 1; 2 * s <= m; ++s) {
                BigRat first = 0, second = 0;
                for (int j = 0; j <= s - delta; ++j) {
                    BigRat term = qp(std::int64_t(j) * (j - 1)) * qb(s, j) *
                                  (qp(std::int64_t(2 * n + 1) * (s - delta - j) + 2 * j) - 1);
                    first += (j % 2 ? -term : term);
                }
                for (int j = 0; j <= s - delta - 1; ++j) {
                    BigRat term = qp(std::int64_t(j) * (j - 1)) * qb(s, j) *
                                  (qp(std::int64_t(2 * n + 1) * (s - delta - j) + 2 * (j - s)) - 1);
                    second += (j % 2 ? -term : term);
                }
                for (int tau : {+1, -1})
                    out.full.add(OrbitIndex::even(2 * s, tau),
                                 BigRat(1, 2) * qb(n, s) * first + BigRat(tau, 2) * qp(s) * qb(n, s) * second);
            }
            check(BigRat(size_bound(FormKind::quadratic, m, q, d, BoundVariant::general)) == out.full.total(),
                  errc::inconsistent_system, "theoretical distribution mass mismatch");
            return out;
        }
        case MaxCase::elliptic: {
            check(m % 2 == 0 && d % 2 == 0, errc::parity_mismatch, "elliptic case needs m and d even");
            int n = m / 2, delta = d / 2;
            out.full.add(OrbitIndex::zero(), 1);
            for (int s = 1; 2 * s - 1 <= m; ++s) {
                BigRat acc = 0;
                for (int j = 0; j <= s - delta - 1; ++j) {
                    BigRat term = qp(std::int64_t(j) * (j - 1)) * qb(s - 1, j) *
                                  qp(std::int64_t(2 * n) * (s - delta - j - 1) + s + j - 1);
                    acc += (j % 2 ? -term : term);
                }
                out.full.add(OrbitIndex::odd(2 * s - 1), (qp(2 * s) - 1) * qb(n, s) * acc);
            }
            for (int s = 1; 2 * s <= m; ++s)
                for (int tau : {+1, -1}) {
                    BigRat acc = 0;
                    for (int j = 0; j <= s - delta; ++j) {
                        BigRat term = qp(std::int64_t(j) * (j - 1)) * qb(s, j) *
                                      (qp(std::int64_t(2 * n) * (s - delta - j) + j) - tau);
                        acc += (j % 2 ? -term : term);
                    }
                    out.full.add(OrbitIndex::even(2 * s, tau), BigRat(1, 2) * (qp(s) + tau) * qb(n, s) * acc);
                }
            check(BigRat(size_bound(FormKind::quadratic, m, q, d, BoundVariant::elliptic)) == out.full.total(),
                  errc::inconsistent_system, "theoretical distribution mass mismatch");
            return out;
        }
        case MaxCase::quad_even_q_even_d_partial: {
            check(q % 2 == 0, errc::unsupported_case, "partial even-d case needs even q");
            check(d % 2 == 0, errc::parity_mismatch, "case needs d even");
            int n = m / 2, delta = d / 2;
            out.partial = true;
            BigRat c = qp(m % 2 == 0 ? m - 1 : m);
            out.b_aggregates[0] = 1;
            for (int s = 1; s <= n; ++s) {
                BigRat acc = 0;
                for (int j = 0; j <= s - delta; ++j) {
                    BigRat cpow = 1;
                    for (int t = 0; t < s - delta - j + 1; ++t) cpow *= c;
                    BigRat term = qp(std::int64_t(j) * (j - 1)) * qb(s, j) * (cpow - 1);
                    acc += (j % 2 ? -term : term);
                }
                out.b_aggregates[s] = qb(n, s) * acc;
            }
            BigRat mass = 0;
            for (const auto& [s, b] : out.b_aggregates) mass += b;
            check(BigRat(size_bound(FormKind::quadratic, m, q, d, BoundVariant::general)) == mass,
                  errc::inconsistent_system, "theoretical aggregate mass mismatch");
            return out;
        }
    }
    raise(errc::bad_argument, "unknown case");
}

// --------------------------------------------------------------------------
// Annihilators and the MacWilliams identity.

/// Annihilator of an additive set: for X in Q(m,q) the set of all S with
/// <Q,S> = 1 for every Q in X (and symmetrically), computed as the kernel of
/// the pairing-exponent map over F_p. |X| |X°| = q^(m(m+1)/2).
template <typename FormT>
auto annihilator(const FormSet<FormT>& X, std::uint64_t cap = global_cap()) {
    using DualForm = std::conditional_t<std::is_same_v<FormT, QuadForm>, SymForm, QuadForm>;
    check(is_additive(X), errc::not_additive, "annihilator: set is not additive");
    const Field& f = *X.field;
    const Field& fp = Field::get(f.p(), 1);
    int m = X.m;
    int digits = int(f.k());
    auto positions = detail::upper_positions(m);
    int ncols = int(positions.size()) * digits;

    // F_p basis of X
    std::vector<const FormT*> basis;
    {
        RowSpan span(fp, m * m * digits);
        for (const auto& x : X.members)
            if (span.insert(detail::fp_coords_of(x, f))) basis.push_back(&x);
    }

    // unit dual forms: one free upper-triangle coefficient digit each
    auto unit_dual = [&](int t, int dgt) {
        DualForm u(f, m);
        auto [i, j] = positions[std::size_t(t)];
        felem v = 1;
        for (int e = 0; e < dgt; ++e) v = felem(v * f.p());
        u.coeffs()[std::size_t(i) * m + j] = v;
        if constexpr (std::is_same_v<DualForm, SymForm>) u.coeffs()[std::size_t(j) * m + i] = v;
        return u;
    };

    Mat pairing_mat(fp, int(basis.size()), ncols);
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (int t = 0; t < int(positions.size()); ++t)
            for (int dgt = 0; dgt < digits; ++dgt) {
                DualForm u = unit_dual(t, dgt);
                int e;
                if constexpr (std::is_same_v<FormT, QuadForm>)
                    e = pairing_exponent(*basis[b], u);
                else
                    e = pairing_exponent(u, *basis[b]);
                pairing_mat.at(int(b), t * digits + dgt) = felem(e);
            }

    auto kernel = mat_nullspace(pairing_mat);
    BigInt count = big_pow(BigInt(f.p()), kernel.size());
    check(count * BigInt(std::uint64_t(X.size())) == form_space_size(m, f.q()), errc::inconsistent_system,
          "annihilator: |X| |X°| != |space|");
    check(count <= BigInt(cap), errc::cap_exceeded, "annihilator: materialization of " + count.str() + " forms exceeds cap");

    std::vector<DualForm> members;
    members.reserve(std::size_t(count.convert_to<std::uint64_t>()));
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < kernel.size(); ++t) total *= f.p();
    std::vector<felem> lambda(kernel.size(), 0);
    for (std::uint64_t it = 0;; ++it) {
        DualForm x(f, m);
        for (std::size_t b = 0; b < kernel.size(); ++b) {
            if (!lambda[b]) continue;
            for (int t = 0; t < int(positions.size()); ++t)
                for (int dgt = 0; dgt < digits; ++dgt) {
                    felem coef = felem((std::uint64_t(kernel[b][std::size_t(t * digits + dgt)]) * lambda[b]) % f.p());
                    if (!coef) continue;
                    felem v = coef;
                    for (int e = 0; e < dgt; ++e) v = felem(v * f.p());
                    auto [i, j] = positions[std::size_t(t)];
                    x.coeffs()[std::size_t(i) * m + j] = f.add(x.coeffs()[std::size_t(i) * m + j], v);
                    if constexpr (std::is_same_v<DualForm, SymForm>)
                        if (i != j) x.coeffs()[std::size_t(j) * m + i] = x.coeffs()[std::size_t(i) * m + j];
                }
        }
        members.push_back(std::move(x));
        if (it + 1 == total) break;
        std::size_t pos = 0;
        while (++lambda[pos] == f.p()) {
            lambda[pos] = 0;
            ++pos;
        }
    }
    return make_form_set(f, m, std::move(members));
}

/// MacWilliams identity |X| a°_k = a'_k for additive X.
template <typename FormT>
bool macwilliams_check(const FormSet<FormT>& X, std::uint64_t cap = global_cap()) {
    auto dual_set = annihilator(X, cap);
    InnerDist adeg = inner_dist(dual_set, cap);
    DualDist aprime = dual_dist(X.kind, inner_dist(X, cap), X.q());
    BigRat size(std::uint64_t(X.size()));
    for (const auto& k : orbit_indices(X.m))
        if (size * adeg.at(k) != aprime.at(k)) return false;
    return true;
}

// --------------------------------------------------------------------------
// The A/B/C aggregate transforms between inner and dual distributions.

/// Verifies the three F-number transform identities linking the aggregates
/// of the inner distribution with those of the dual distribution. Works for
/// arbitrary subsets of either space.
inline bool abc_transform_check(FormKind kind, const InnerDist& inner, const DualDist& dual, int m, std::uint64_t q) {
    auto at = [&](const Dist& dist, int rank, int tau) {
        OrbitIndex i = tau == 0 ? OrbitIndex::odd(rank) : OrbitIndex::even(rank, tau);
        if (!i.admissible(m)) return BigRat(0);
        return dist.at(i);
    };
    int n1 = (m + 1) / 2, n = m / 2;
    // "plain" aggregates of a distribution (A, B at a half-integer grid)
    auto agg_a = [&](const Dist& d, int s) { return at(d, 2 * s, +1) + at(d, 2 * s, -1) + at(d, 2 * s - 1, 0); };
    auto agg_b = [&](const Dist& d, int s) { return at(d, 2 * s, +1) + at(d, 2 * s, -1) + at(d, 2 * s + 1, 0); };
    auto agg_c_weighted = [&](const Dist& d, int r) {
        return (alpha_coef(-1, q) * at(d, 2 * r, +1) - alpha_coef(+1, q) * at(d, 2 * r, -1)) / beta_coef(r, q);
    };
    auto agg_c_plain = [&](const Dist& d, int s) { return rat_pow(q, -s) * (at(d, 2 * s, +1) - at(d, 2 * s, -1)); };

    bool quad_side = kind == FormKind::quadratic;
    // for subsets of Q: C_s is the plain difference, C'_r the weighted one;
    // for subsets of S the roles are exchanged
    for (int r = 0; r <= n1; ++r) {
        BigRat rhs = 0;
        for (int s = 0; s <= n1; ++s) rhs += BigRat(f_num(m + 1, r, s, q)) * agg_a(inner, s);
        if (agg_a(dual, r) != rhs) return false;
    }
    for (int r = 0; r <= n; ++r) {
        BigRat rhs = 0;
        for (int s = 0; s <= n; ++s) rhs += BigRat(f_num(m, r, s, q)) * agg_b(inner, s);
        BigRat lhs = quad_side ? agg_c_weighted(dual, r) : agg_c_plain(dual, r);
        if (lhs != rhs) return false;
    }
    for (int r = 0; r <= n; ++r) {
        BigRat rhs = 0;
        for (int s = 0; s <= n; ++s) {
            BigRat cs = quad_side ? agg_c_plain(inner, s) : agg_c_weighted(inner, s);
            rhs += BigRat(f_num(m, r, s, q)) * cs;
        }
        rhs *= rat_pow(q, m);
        if (agg_b(dual, r) != rhs) return false;
    }
    return true;
}

template <typename FormT>
bool abc_transform_check(const FormSet<FormT>& X, std::uint64_t cap = global_cap()) {
    InnerDist inner = inner_dist(X, cap);
    return abc_transform_check(X.kind, inner, dual_dist(X.kind, inner, X.q()), X.m, X.q());
}

// --------------------------------------------------------------------------

/// The sporadic 22-element 2-code in S(3,2): the zero form together with all
/// 21 non-alternating rank-2 symmetric 3x3 matrices over F_2. Exceeds the
/// additive bound of 16.
inline SymSet sporadic_22_code() {
    const Field& f = Field::get(2, 1);
    std::vector<SymForm> members;
    for_each_sym(f, 3, [&](const SymForm& s) {
        if (s.is_zero() || classify(s) == OrbitIndex::even(2, -1)) members.push_back(s);
    });
    return make_form_set(f, 3, std::move(members));
}

}  // namespace formscheme
