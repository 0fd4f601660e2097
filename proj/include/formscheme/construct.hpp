#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "formscheme/codesets.hpp"

namespace formscheme {

/// Number of trace coefficients of a form on F_{q^m}: f_0..f_{n-1} in
/// F_{q^m}, plus one extra coefficient in F_{q^(m/2)} when m is even.
inline int trace_coeff_count(int m) { return m % 2 ? (m + 1) / 2 : m / 2 + 1; }

namespace detail {

/// Trace of the intermediate field F_{q^n} down to F_q, evaluated inside
/// F_{q^m}; z must satisfy z^(q^n) = z.
inline felem rel_trace_sub(const Tower& t, felem z, std::uint32_t n) {
    const Field& E = t.big();
    felem acc = 0, w = z;
    for (std::uint32_t j = 0; j < n; ++j) {
        w = t.frobenius(w);
        acc = E.add(acc, w);
    }
    return t.unembed(acc);
}

}  // namespace detail

/// Coefficients (f_0, ..., f_{n-1} [, f_n]) of the canonical trace
/// representation Q(x) = sum_i Tr_m(f_i x^(q^i+1)) [+ Tr_n(f_n x^(q^n+1))].
struct TraceQuadCoeffs {
    const Tower* tower = nullptr;
    std::vector<felem> f;

    TraceQuadCoeffs(const Tower& t, std::vector<felem> coeffs) : tower(&t), f(std::move(coeffs)) {
        int m = int(t.m());
        check(int(f.size()) == trace_coeff_count(m), errc::dimension_mismatch, "trace coefficient count");
        if (m % 2 == 0) {
            std::uint64_t qn = 1;
            for (int i = 0; i < m / 2; ++i) qn *= t.q();
            check(t.big().pow(f.back(), qn) == f.back(), errc::bad_argument, "last coefficient must lie in the half-degree subfield");
        }
    }

    felem eval(felem x) const {
        const Tower& t = *tower;
        const Field& E = t.big();
        int m = int(t.m());
        int n_full = m % 2 ? (m + 1) / 2 : m / 2;
        felem acc = 0, xqi = x;  // x^(q^i), starting at i = 0
        for (int i = 0; i < n_full; ++i) {
            if (f[std::size_t(i)]) acc = E.add(acc, E.mul(f[std::size_t(i)], E.mul(xqi, x)));
            xqi = t.frobenius(xqi);
        }
        felem val = t.rel_trace(acc);
        if (m % 2 == 0) {
            // xqi is now x^(q^n); f_n x^(q^n+1) lies in F_{q^n}
            felem z = E.mul(f.back(), E.mul(xqi, x));
            val = t.base().add(val, detail::rel_trace_sub(t, z, std::uint32_t(m / 2)));
        }
        return val;
    }
};

/// Coefficients of S(x,y) = Tr_m(g_0 xy) + sum_i Tr_m(g_i (x y^(q^i) + x^(q^i) y))
/// [+ Tr_m(g_n x y^(q^n))].
struct TraceSymCoeffs {
    const Tower* tower = nullptr;
    std::vector<felem> g;

    TraceSymCoeffs(const Tower& t, std::vector<felem> coeffs) : tower(&t), g(std::move(coeffs)) {
        int m = int(t.m());
        check(int(g.size()) == trace_coeff_count(m), errc::dimension_mismatch, "trace coefficient count");
        if (m % 2 == 0) {
            std::uint64_t qn = 1;
            for (int i = 0; i < m / 2; ++i) qn *= t.q();
            check(t.big().pow(g.back(), qn) == g.back(), errc::bad_argument, "last coefficient must lie in the half-degree subfield");
        }
    }

    felem eval(felem x, felem y) const {
        const Tower& t = *tower;
        const Field& E = t.big();
        int m = int(t.m());
        int n_full = m % 2 ? (m + 1) / 2 : m / 2;
        felem acc = E.mul(g[0], E.mul(x, y));
        felem xqi = x, yqi = y;
        for (int i = 1; i < n_full; ++i) {
            xqi = t.frobenius(xqi);
            yqi = t.frobenius(yqi);
            if (g[std::size_t(i)]) acc = E.add(acc, E.mul(g[std::size_t(i)], E.add(E.mul(x, yqi), E.mul(xqi, y))));
        }
        if (m % 2 == 0 && g.back()) {
            felem yqn = t.frobenius(yqi);  // y^(q^(m/2)); the loop left yqi at y^(q^(m/2-1))
            acc = E.add(acc, E.mul(g.back(), E.mul(x, yqn)));
        }
        return t.rel_trace(acc);
    }
};

/// Coefficient matrix of the trace form with respect to the given basis:
/// A_ii = Q(a_i), A_ij = Q(a_i + a_j) - Q(a_i) - Q(a_j) for i < j.
inline QuadForm trace_quad_to_matrix(const TraceQuadCoeffs& c, const std::vector<felem>& basis) {
    const Tower& t = *c.tower;
    int m = int(t.m());
    check(int(basis.size()) == m, errc::singular_basis, "basis length");
    const Field& B = t.base();
    QuadForm qf(B, m);
    std::vector<felem> diag(std::size_t(m), 0);
    for (int i = 0; i < m; ++i) {
        diag[std::size_t(i)] = c.eval(basis[std::size_t(i)]);
        qf.at(i, i) = diag[std::size_t(i)];
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            felem v = c.eval(t.big().add(basis[std::size_t(i)], basis[std::size_t(j)]));
            qf.at(i, j) = B.sub(B.sub(v, diag[std::size_t(i)]), diag[std::size_t(j)]);
        }
    return qf;
}

inline SymForm trace_sym_to_matrix(const TraceSymCoeffs& c, const std::vector<felem>& basis) {
    const Tower& t = *c.tower;
    int m = int(t.m());
    check(int(basis.size()) == m, errc::singular_basis, "basis length");
    // S(x,y) = S(y,x) holds by construction (the even-m tail is symmetric
    // because g_n is fixed by the half-degree Frobenius), so the upper
    // triangle determines the Gram matrix
    SymForm sf(t.base(), m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            felem v = c.eval(basis[std::size_t(i)], basis[std::size_t(j)]);
            sf.at(i, j) = v;
            sf.at(j, i) = v;
        }
    return sf;
}

namespace detail {

/// Enumerates tuples with free slots over F_{q^m} at the given coefficient
/// positions (all other coefficients zero) and hands each to fn. With
/// free_mid set, the last coefficient additionally runs over the
/// half-degree subfield.
template <typename Fn>
void for_each_supported_tuple(const Tower& t, const std::vector<int>& free_slots, bool free_mid, Fn&& fn, std::uint64_t cap) {
    int m = int(t.m());
    std::vector<felem> mid;
    if (free_mid) mid = t.subfield_elements(std::uint32_t(m / 2));
    BigInt total = big_pow(BigInt(t.big().q()), free_slots.size());
    if (free_mid) total *= BigInt(std::uint64_t(mid.size()));
    check(total <= BigInt(cap), errc::cap_exceeded,
          "construction of " + total.str() + " forms exceeds cap " + std::to_string(cap));
    std::uint64_t count = total.convert_to<std::uint64_t>();
    std::vector<felem> tuple(std::size_t(trace_coeff_count(m)), 0);
    std::uint64_t big_q = t.big().q();
    std::vector<std::size_t> odo(free_slots.size() + (free_mid ? 1 : 0), 0);
    for (std::uint64_t it = 0;; ++it) {
        for (std::size_t s = 0; s < free_slots.size(); ++s) tuple[std::size_t(free_slots[s])] = felem(odo[s]);
        if (free_mid) tuple.back() = mid[odo.back()];
        fn(static_cast<const std::vector<felem>&>(tuple));
        if (it + 1 == count) break;
        std::size_t pos = 0;
        while (true) {
            std::size_t limit = (free_mid && pos == free_slots.size()) ? mid.size() : big_q;
            if (++odo[pos] == limit) {
                odo[pos] = 0;
                ++pos;
            } else {
                break;
            }
        }
    }
}

/// Enumerates every coefficient tuple of the full representation.
template <typename Fn>
void for_each_trace_tuple(const Tower& t, Fn&& fn, std::uint64_t cap) {
    int m = int(t.m());
    int nfull = m % 2 ? (m + 1) / 2 : m / 2;
    std::vector<int> slots;
    for (int i = 0; i < nfull; ++i) slots.push_back(i);
    for_each_supported_tuple(t, slots, m % 2 == 0, std::forward<Fn>(fn), cap);
}

}  // namespace detail

/// Verifies the coefficient form of the pairing: with the quadratic side in
/// the fixed polynomial basis and the bilinear side in its trace-dual basis,
/// <Q,S> has exponent Tr(sum_i Tr_m(f_i g_i) [+ Tr_n(f_n g_n)]). Exhaustive
/// when the coefficient space fits the cap, randomly sampled otherwise.
inline bool coeff_pairing_check(int m, const Field& base, std::uint64_t cap = 1 << 14, std::uint64_t seed = 0) {
    const Tower& t = Tower::get(base.p(), base.k(), std::uint32_t(m));
    const Field& E = t.big();
    auto alpha = t.polynomial_basis();
    auto beta = t.dual_basis(alpha);
    int nfull = m % 2 ? (m + 1) / 2 : m / 2;

    auto exponent_from_coeffs = [&](const std::vector<felem>& f, const std::vector<felem>& g) {
        felem acc = 0;
        for (int i = 0; i < nfull; ++i) acc = base.add(acc, t.rel_trace(E.mul(f[std::size_t(i)], g[std::size_t(i)])));
        if (m % 2 == 0) acc = base.add(acc, detail::rel_trace_sub(t, E.mul(f.back(), g.back()), std::uint32_t(m / 2)));
        return int(base.abs_trace(acc));
    };
    auto agree = [&](const std::vector<felem>& fv, const std::vector<felem>& gv) {
        QuadForm qf = trace_quad_to_matrix(TraceQuadCoeffs(t, fv), alpha);
        SymForm sf = trace_sym_to_matrix(TraceSymCoeffs(t, gv), beta);
        return pairing_exponent(qf, sf) == exponent_from_coeffs(fv, gv);
    };

    BigInt space = form_space_size(m, base.q());
    if (space * space <= BigInt(cap)) {
        bool ok = true;
        detail::for_each_trace_tuple(t, [&](const std::vector<felem>& fv) {
            detail::for_each_trace_tuple(t, [&](const std::vector<felem>& gv) { ok = ok && agree(fv, gv); }, cap);
        }, cap);
        return ok;
    }
    std::mt19937_64 rng(seed);
    std::vector<felem> mid;
    if (m % 2 == 0) mid = t.subfield_elements(std::uint32_t(m / 2));
    auto random_tuple = [&] {
        std::vector<felem> v(std::size_t(trace_coeff_count(m)), 0);
        for (int i = 0; i < nfull; ++i) v[std::size_t(i)] = felem(rng() % E.q());
        if (m % 2 == 0) v.back() = mid[rng() % mid.size()];
        return v;
    };
    for (int trial = 0; trial < 512; ++trial)
        if (!agree(random_tuple(), random_tuple())) return false;
    return true;
}

// --------------------------------------------------------------------------
// The maximal d-code constructions.

/// Additive d-code in S(m,q) of size q^(m(m-d+2)/2): coefficients
/// g_0, ..., g_((m-d)/2) free, the rest zero. Needs d = m (mod 2).
inline SymSet sym_dcode(int m, int d, const Field& base, std::uint64_t cap = global_cap()) {
    check(1 <= d && d <= m, errc::bad_argument, "need 1 <= d <= m");
    check((m - d) % 2 == 0, errc::parity_mismatch, "sym_dcode needs d = m (mod 2)");
    const Tower& t = Tower::get(base.p(), base.k(), std::uint32_t(m));
    auto basis = t.polynomial_basis();
    std::vector<int> slots;
    for (int i = 0; i <= (m - d) / 2; ++i) slots.push_back(i);
    std::vector<SymForm> members;
    detail::for_each_supported_tuple(t, slots, false, [&](const std::vector<felem>& gv) {
        members.push_back(trace_sym_to_matrix(TraceSymCoeffs(t, gv), basis));
    }, cap);
    auto set = make_form_set(base, m, std::move(members));
    check(BigInt(std::uint64_t(set.size())) == big_pow(BigInt(base.q()), std::uint64_t(m) * (m - d + 2) / 2),
          errc::inconsistent_system, "sym_dcode: unexpected size");
    return set;
}

/// Additive maximal d-code in Q(m,q) of size q^(m(m-d+2)/2) for odd m and
/// odd d: coefficients f_i free for (d-1)/2 <= i <= (m-1)/2.
inline QuadSet quad_dcode_odd_odd(int m, int d, const Field& base, std::uint64_t cap = global_cap()) {
    check(1 <= d && d <= m, errc::bad_argument, "need 1 <= d <= m");
    check(m % 2 == 1 && d % 2 == 1, errc::parity_mismatch, "quad_dcode_odd_odd needs m and d odd");
    const Tower& t = Tower::get(base.p(), base.k(), std::uint32_t(m));
    auto basis = t.polynomial_basis();
    std::vector<int> slots;
    for (int i = (d - 1) / 2; i <= (m - 1) / 2; ++i) slots.push_back(i);
    std::vector<QuadForm> members;
    detail::for_each_supported_tuple(t, slots, false, [&](const std::vector<felem>& fv) {
        members.push_back(trace_quad_to_matrix(TraceQuadCoeffs(t, fv), basis));
    }, cap);
    auto set = make_form_set(base, m, std::move(members));
    check(BigInt(std::uint64_t(set.size())) == big_pow(BigInt(base.q()), std::uint64_t(m) * (m - d + 2) / 2),
          errc::inconsistent_system, "quad_dcode_odd_odd: unexpected size");
    return set;
}

/// Additive maximal elliptic (2 delta)-code in Q(m,q), m = 2n, of size
/// q^(m(n-delta)+n): coefficients f_delta..f_{n-1} in F_{q^m} and f_n in F_{q^n}.
inline QuadSet elliptic_dcode(int m, int delta, const Field& base, std::uint64_t cap = global_cap()) {
    check(m % 2 == 0, errc::parity_mismatch, "elliptic_dcode needs m even");
    int n = m / 2;
    check(1 <= delta && delta <= n, errc::bad_argument, "need 1 <= delta <= m/2");
    const Tower& t = Tower::get(base.p(), base.k(), std::uint32_t(m));
    auto basis = t.polynomial_basis();
    std::vector<int> slots;
    for (int i = delta; i <= n - 1; ++i) slots.push_back(i);
    std::vector<QuadForm> members;
    detail::for_each_supported_tuple(t, slots, true, [&](const std::vector<felem>& fv) {
        members.push_back(trace_quad_to_matrix(TraceQuadCoeffs(t, fv), basis));
    }, cap);
    auto set = make_form_set(base, m, std::move(members));
    check(BigInt(std::uint64_t(set.size())) == big_pow(BigInt(base.q()), std::uint64_t(m) * (n - delta) + std::uint64_t(n)),
          errc::inconsistent_system, "elliptic_dcode: unexpected size");
    return set;
}

/// Maximal d-code in Q(m,q) of size q^((m-1)(m-d+2)/2) for even q and even
/// m, d: forms on F_{q^(m-1)} x F_q built from f_0, ..., f_((m-d)/2).
inline QuadSet quad_dcode_even_even(int m, int d, const Field& base, std::uint64_t cap = global_cap()) {
    check(base.p() == 2, errc::odd_characteristic, "quad_dcode_even_even needs even q");
    check(1 <= d && d <= m, errc::bad_argument, "need 1 <= d <= m");
    check(m % 2 == 0 && d % 2 == 0, errc::parity_mismatch, "quad_dcode_even_even needs m and d even");
    const Tower& t = Tower::get(base.p(), base.k(), std::uint32_t(m - 1));
    const Field& E = t.big();
    auto gamma_basis = t.polynomial_basis();

    int nf = (m - d) / 2 + 1;  // f_0 .. f_{(m-d)/2}
    auto eval = [&](const std::vector<felem>& fv, felem x, felem u) {
        // sum_{i=1}^{m/2-1} Tr((f_0 x)^(q^i+1)) + u Tr(f_0 x) + sum_{i=1}^{(m-d)/2} Tr(f_i x^(q^i+1))
        felem acc = 0;
        felem f0x = E.mul(fv[0], x);
        felem w = f0x;
        for (int i = 1; i <= m / 2 - 1; ++i) {
            w = t.frobenius(w);
            acc = E.add(acc, E.mul(w, f0x));
        }
        felem xqi = x;
        for (int i = 1; i <= (m - d) / 2; ++i) {
            xqi = t.frobenius(xqi);
            if (fv[std::size_t(i)]) acc = E.add(acc, E.mul(fv[std::size_t(i)], E.mul(xqi, x)));
        }
        felem val = t.rel_trace(acc);
        if (u) val = base.add(val, base.mul(u, t.rel_trace(f0x)));
        return val;
    };
    auto to_matrix = [&](const std::vector<felem>& fv) {
        // basis of V = F_{q^(m-1)} x F_q: (gamma^j, 0) for j < m-1, then (0,1)
        QuadForm qf(base, m);
        std::vector<felem> diag(std::size_t(m), 0);
        auto basis_eval = [&](int j) { return j < m - 1 ? eval(fv, gamma_basis[std::size_t(j)], 0) : eval(fv, 0, 1); };
        for (int j = 0; j < m; ++j) {
            diag[std::size_t(j)] = basis_eval(j);
            qf.at(j, j) = diag[std::size_t(j)];
        }
        for (int j = 0; j < m; ++j)
            for (int l = j + 1; l < m; ++l) {
                felem xs = l < m - 1 ? E.add(gamma_basis[std::size_t(j)], gamma_basis[std::size_t(l)]) : gamma_basis[std::size_t(j)];
                felem us = l < m - 1 ? 0 : 1;
                felem v = eval(fv, xs, us);
                qf.at(j, l) = base.sub(base.sub(v, diag[std::size_t(j)]), diag[std::size_t(l)]);
            }
        return qf;
    };

    BigInt total = big_pow(BigInt(E.q()), std::uint64_t(nf));
    check(total <= BigInt(cap), errc::cap_exceeded, "construction of " + total.str() + " forms exceeds cap");
    std::uint64_t count = total.convert_to<std::uint64_t>();
    std::vector<QuadForm> members;
    members.reserve(std::size_t(count));
    std::vector<felem> fv(std::size_t(nf), 0);
    for (std::uint64_t it = 0;; ++it) {
        members.push_back(to_matrix(fv));
        if (it + 1 == count) break;
        std::size_t pos = 0;
        while (++fv[pos] == E.q()) {
            fv[pos] = 0;
            ++pos;
        }
    }
    auto set = make_form_set(base, m, std::move(members));
    check(BigInt(std::uint64_t(set.size())) == big_pow(BigInt(base.q()), std::uint64_t(m - 1) * (m - d + 2) / 2),
          errc::inconsistent_system, "quad_dcode_even_even: unexpected size");
    return set;
}

// --------------------------------------------------------------------------

/// Restriction of every member to the hyperplane spanned by the given m-1
/// independent vectors, re-expressed in that basis; duplicates collapse.
template <typename FormT>
FormSet<FormT> puncture(const FormSet<FormT>& X, const std::vector<std::vector<felem>>& w_basis) {
    const Field& f = *X.field;
    int m = X.m;
    check(int(w_basis.size()) == m - 1, errc::bad_subspace, "puncture: need m-1 basis vectors");
    Mat wm(f, m - 1, m);
    for (int a = 0; a < m - 1; ++a) {
        check(int(w_basis[std::size_t(a)].size()) == m, errc::bad_subspace, "puncture: basis vector length");
        for (int j = 0; j < m; ++j) wm.at(a, j) = w_basis[std::size_t(a)][std::size_t(j)];
    }
    check(mat_rank(wm) == m - 1, errc::bad_subspace, "puncture: basis vectors are dependent");

    std::set<std::vector<felem>> seen;
    std::vector<FormT> members;
    for (const auto& x : X.members) {
        FormT r(f, m - 1);
        if constexpr (std::is_same_v<FormT, QuadForm>) {
            std::vector<felem> diag(std::size_t(m - 1), 0);
            for (int a = 0; a < m - 1; ++a) {
                diag[std::size_t(a)] = x.eval(w_basis[std::size_t(a)]);
                r.at(a, a) = diag[std::size_t(a)];
            }
            for (int a = 0; a < m - 1; ++a)
                for (int b = a + 1; b < m - 1; ++b) {
                    std::vector<felem> sum(std::size_t(m), 0);
                    for (int j = 0; j < m; ++j) sum[std::size_t(j)] = f.add(w_basis[std::size_t(a)][std::size_t(j)], w_basis[std::size_t(b)][std::size_t(j)]);
                    r.at(a, b) = f.sub(f.sub(x.eval(sum), diag[std::size_t(a)]), diag[std::size_t(b)]);
                }
        } else {
            for (int a = 0; a < m - 1; ++a)
                for (int b = 0; b < m - 1; ++b) r.at(a, b) = x.eval(w_basis[std::size_t(a)], w_basis[std::size_t(b)]);
        }
        if (seen.insert(r.coeffs()).second) members.push_back(std::move(r));
    }
    return make_form_set(f, m - 1, std::move(members));
}

/// Puncture to the default hyperplane, the span of the first m-1 coordinate
/// vectors (restriction just deletes the last matrix row and column).
template <typename FormT>
FormSet<FormT> puncture(const FormSet<FormT>& X) {
    std::vector<std::vector<felem>> w;
    for (int a = 0; a < X.m - 1; ++a) {
        std::vector<felem> v(std::size_t(X.m), 0);
        v[std::size_t(a)] = 1;
        w.push_back(std::move(v));
    }
    return puncture(X, w);
}

}  // namespace formscheme
