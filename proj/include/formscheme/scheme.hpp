#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "formscheme/bigint.hpp"
#include "formscheme/forms.hpp"
#include "formscheme/qnum.hpp"

namespace formscheme {

/// Type-weight alpha_eps of the valency formulas: (1-eps)/2 for even q,
/// 1/2 for odd q.
inline BigRat alpha_coef(int eps, std::uint64_t q) {
    if (q % 2 == 0) return BigRat(1 - eps, 2);
    return BigRat(1, 2);
}

/// Rank-weight beta_r: 1 for even q, q^r/2 for odd q.
inline BigRat beta_coef(int r, std::uint64_t q) {
    if (q % 2 == 0) return BigRat(1);
    return BigRat(big_pow(BigInt(q), std::uint64_t(r)), 2);
}

/// Class size v_i = |Q_i| (quadratic) or mu_i = |S_i| (symmetric).
inline BigInt valency(FormKind kind, const OrbitIndex& i, int m, std::uint64_t q) {
    check(i.admissible(m), errc::inadmissible_index, "valency: index " + i.str() + " inadmissible for m=" + std::to_string(m));
    BigInt qm = big_pow(BigInt(q), std::uint64_t(m));
    int s = i.s();
    auto tail = [&](int upto) {  // prod_{t=0}^{upto-1} (q^m - q^t)
        BigInt acc = 1, qt = 1;
        for (int t = 0; t < upto; ++t) {
            acc *= qm - qt;
            qt *= q;
        }
        return acc;
    };
    BigInt denom = 1;
    {
        BigInt q2s = big_pow(BigInt(q), std::uint64_t(2 * s)), q2t = 1;
        for (int t = 0; t < s; ++t) {
            denom *= q2s - q2t;
            q2t *= BigInt(q) * q;
        }
    }
    if (!i.even_rank()) {
        BigRat v = BigRat(tail(i.r), big_pow(BigInt(q), std::uint64_t(s)) * denom);
        return to_integer(v, "valency");
    }
    if (i.r == 0) return 1;
    BigRat front;
    if (kind == FormKind::quadratic) {
        front = BigRat(big_pow(BigInt(q), std::uint64_t(s)) + i.tau, 2);
    } else {
        front = alpha_coef(i.tau, q) * rat_pow(q, s) + BigRat(i.tau) * beta_coef(s, q) * rat_pow(q, -s);
    }
    BigRat v = front * BigRat(tail(i.r), denom);
    return to_integer(v, "valency");
}

/// Q-numbers of the association scheme of quadratic forms (the four-case
/// closed form in terms of generalized-Krawtchouk numbers, with
/// Q_{0,1}(i) = 1 and Q_k(0,1) = mu_k). Zero when either class is empty.
inline BigInt q_number(const OrbitIndex& k, const OrbitIndex& i, int m, std::uint64_t q) {
    if (!k.admissible(m) || !i.admissible(m)) return 0;
    if (k == OrbitIndex::zero()) return 1;
    if (i == OrbitIndex::zero()) return valency(FormKind::symmetric, k, m, q);
    BigInt Q(q);
    if (!k.even_rank()) {
        int r = k.s();  // k = 2r+1
        if (!i.even_rank()) {
            int s = i.s();
            return -big_pow(Q, std::uint64_t(2 * r)) * f_num(m - 1, r, s, q);
        }
        int s = i.s();
        return -big_pow(Q, std::uint64_t(2 * r)) * f_num(m - 1, r, s - 1, q) +
               BigInt(i.tau) * big_pow(Q, std::uint64_t(m - s + 2 * r)) * f_num(m - 2, r, s - 1, q);
    }
    int r = k.s(), eps = k.tau;
    BigRat ab = BigRat(eps) * beta_coef(r, q);
    if (!i.even_rank()) {
        int s = i.s();
        BigRat val = alpha_coef(eps, q) * BigRat(big_pow(Q, std::uint64_t(2 * r)) * f_num(m - 1, r, s, q)) + ab * BigRat(f_num(m, r, s, q));
        return to_integer(val, "q_number");
    }
    int s = i.s(), tau = i.tau;
    BigRat inner = BigRat(big_pow(Q, std::uint64_t(2 * r)) * f_num(m - 1, r, s - 1, q)) -
                   BigRat(tau) * BigRat(big_pow(Q, std::uint64_t(m - s + 2 * r - 2)) * f_num(m - 2, r - 1, s - 1, q));
    BigRat val = alpha_coef(eps, q) * inner + ab * BigRat(f_num(m, r, s, q));
    return to_integer(val, "q_number");
}

/// P-numbers of the quadratic scheme: equal to Q_k(i) for odd q; for even q
/// given by the six-case closed form. Always satisfies mu_k P_i(k) = v_i Q_k(i),
/// which is asserted.
inline BigInt p_number(const OrbitIndex& i, const OrbitIndex& k, int m, std::uint64_t q) {
    if (!k.admissible(m) || !i.admissible(m)) return 0;
    BigInt result;
    if (q % 2) {
        // self-dual case: the P-matrix coincides with the Q-matrix entrywise
        result = q_number(i, k, m, q);
    } else if (i == OrbitIndex::zero()) {
        result = 1;
    } else if (k == OrbitIndex::zero()) {
        result = valency(FormKind::quadratic, i, m, q);
    } else {
        BigInt Q(q);
        int s = i.s(), r = k.s();
        BigRat val;
        if (!i.even_rank()) {
            if (!k.even_rank()) {
                val = -BigRat(big_pow(Q, std::uint64_t(2 * s)) * f_num(m - 1, s, r, q));
            } else if (k.tau == +1) {
                val = BigRat((big_pow(Q, std::uint64_t(m)) - big_pow(Q, std::uint64_t(2 * s))) * f_num(m, s, r, q));
            } else {
                val = -BigRat(big_pow(Q, std::uint64_t(2 * s)) * f_num(m - 1, s, r - 1, q));
            }
        } else {
            int tau = i.tau;
            if (!k.even_rank()) {
                val = BigRat(big_pow(Q, std::uint64_t(2 * s)) * f_num(m - 1, s, r, q) +
                                 BigInt(tau) * big_pow(Q, std::uint64_t(s)) * f_num(m, s, r, q),
                             2);
            } else if (k.tau == +1) {
                val = BigRat(big_pow(Q, std::uint64_t(s)) * (big_pow(Q, std::uint64_t(s)) + tau) * f_num(m, s, r, q), 2);
            } else {
                val = BigRat(big_pow(Q, std::uint64_t(2 * s)) * f_num(m - 1, s, r - 1, q) +
                                 BigInt(tau) * big_pow(Q, std::uint64_t(s)) * f_num(m, s, r, q),
                             2);
            }
        }
        result = to_integer(val, "p_number");
    }
    // eigenvalue duality: mu_k P_i(k) = v_i Q_k(i)
    check(valency(FormKind::symmetric, k, m, q) * result == valency(FormKind::quadratic, i, m, q) * q_number(k, i, m, q),
          errc::eigen_consistency, "p_number: duality cross-check failed");
    return result;
}

/// Q_k with an integer rank index, summing both types for even rank.
inline BigInt q_number_ranksum(int k_rank, const OrbitIndex& i, int m, std::uint64_t q) {
    if (k_rank < 0) return 0;
    if (k_rank % 2) return q_number(OrbitIndex::odd(k_rank), i, m, q);
    if (k_rank == 0) return q_number(OrbitIndex::zero(), i, m, q);
    return q_number(OrbitIndex::even(k_rank, +1), i, m, q) + q_number(OrbitIndex::even(k_rank, -1), i, m, q);
}

// --------------------------------------------------------------------------
// Character-sum oracles, fully independent of the closed forms: enumerate a
// whole class and accumulate root-of-unity exponents of the pairing.

namespace detail {

/// Reduces sum_e counts[e] w^e (w a primitive p-th root of unity) to a
/// rational integer using 1 + w + ... + w^(p-1) = 0: all coordinates for
/// e >= 1 must agree, and the value is counts[0] - counts[1].
inline BigInt reduce_root_of_unity_sum(const std::vector<std::uint64_t>& counts) {
    for (std::size_t e = 2; e < counts.size(); ++e)
        check(counts[e] == counts[1], errc::non_integral_sum, "character sum is not a rational integer");
    if (counts.size() == 1) return BigInt(counts[0]);
    return BigInt(counts[0]) - BigInt(counts[1]);
}

}  // namespace detail

/// Q_k(i) as the character sum over S_k against a fixed representative of Q_i.
inline BigInt oracle_q_number(const OrbitIndex& k, const OrbitIndex& i, int m, const Field& f, std::uint64_t cap = global_cap()) {
    check(k.admissible(m) && i.admissible(m), errc::inadmissible_index, "oracle_q_number: inadmissible index");
    QuadForm a = canonical_quad(i, m, f);
    std::vector<std::uint64_t> counts(f.p(), 0);
    for_each_sym(f, m, [&](const SymForm& b) {
        if (classify(b) == k) counts[std::size_t(pairing_exponent(a, b))]++;
    }, cap);
    return detail::reduce_root_of_unity_sum(counts);
}

/// P_i(k) as the character sum over Q_i against a fixed representative of S_k.
inline BigInt oracle_p_number(const OrbitIndex& i, const OrbitIndex& k, int m, const Field& f, std::uint64_t cap = global_cap()) {
    check(k.admissible(m) && i.admissible(m), errc::inadmissible_index, "oracle_p_number: inadmissible index");
    SymForm b = canonical_sym(k, m, f);
    std::vector<std::uint64_t> counts(f.p(), 0);
    for_each_quad(f, m, [&](const QuadForm& a) {
        if (classify(a) == i) counts[std::size_t(pairing_exponent(a, b))]++;
    }, cap);
    return detail::reduce_root_of_unity_sum(counts);
}

/// All Q-numbers by one enumeration pass over S(m,q): rows k, columns i.
inline std::vector<std::vector<BigInt>> oracle_q_table(const Field& f, int m, unsigned threads = 1, std::uint64_t cap = global_cap()) {
    auto index = orbit_indices(m);
    std::size_t n = index.size();
    std::vector<QuadForm> reps;
    reps.reserve(n);
    for (const auto& i : index) reps.push_back(canonical_quad(i, m, f));
    std::uint64_t total = checked_space_size(m, f, cap, "oracle_q_table");
    std::size_t p = f.p();
    std::vector<std::vector<std::uint64_t>> counts(threads == 0 ? 1 : threads, std::vector<std::uint64_t>(n * n * p, 0));
    unsigned workers = threads ? threads : 1;
    std::uint64_t chunk = (total + workers - 1) / workers;
    parallel_for(total, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        auto& local = counts[std::size_t(lo / chunk)];
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            SymForm b = sym_at_index(f, m, idx);
            std::size_t kpos = std::size_t(orbit_position(index, classify(b)));
            for (std::size_t ipos = 0; ipos < n; ++ipos) local[(kpos * n + ipos) * p + std::size_t(pairing_exponent(reps[ipos], b))]++;
        }
    });
    std::vector<std::vector<BigInt>> table(n, std::vector<BigInt>(n));
    for (std::size_t kpos = 0; kpos < n; ++kpos)
        for (std::size_t ipos = 0; ipos < n; ++ipos) {
            std::vector<std::uint64_t> merged(p, 0);
            for (const auto& local : counts)
                for (std::size_t e = 0; e < p; ++e) merged[e] += local[(kpos * n + ipos) * p + e];
            table[kpos][ipos] = detail::reduce_root_of_unity_sum(merged);
        }
    return table;
}

/// All P-numbers by one enumeration pass over Q(m,q): rows i, columns k.
inline std::vector<std::vector<BigInt>> oracle_p_table(const Field& f, int m, unsigned threads = 1, std::uint64_t cap = global_cap()) {
    auto index = orbit_indices(m);
    std::size_t n = index.size();
    std::vector<SymForm> reps;
    reps.reserve(n);
    for (const auto& k : index) reps.push_back(canonical_sym(k, m, f));
    std::uint64_t total = checked_space_size(m, f, cap, "oracle_p_table");
    std::size_t p = f.p();
    unsigned workers = threads ? threads : 1;
    std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(n * n * p, 0));
    std::uint64_t chunk = (total + workers - 1) / workers;
    parallel_for(total, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        auto& local = counts[std::size_t(lo / chunk)];
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            QuadForm a = quad_at_index(f, m, idx);
            std::size_t ipos = std::size_t(orbit_position(index, classify(a)));
            for (std::size_t kpos = 0; kpos < n; ++kpos) local[(ipos * n + kpos) * p + std::size_t(pairing_exponent(a, reps[kpos]))]++;
        }
    });
    std::vector<std::vector<BigInt>> table(n, std::vector<BigInt>(n));
    for (std::size_t ipos = 0; ipos < n; ++ipos)
        for (std::size_t kpos = 0; kpos < n; ++kpos) {
            std::vector<std::uint64_t> merged(p, 0);
            for (const auto& local : counts)
                for (std::size_t e = 0; e < p; ++e) merged[e] += local[(ipos * n + kpos) * p + e];
            table[ipos][kpos] = detail::reduce_root_of_unity_sum(merged);
        }
    return table;
}

// --------------------------------------------------------------------------

/// One eigenvalue table. For the quadratic scheme, the P-table rows are
/// indexed by i (classes) and columns by k (eigenspaces); the Q-table is the
/// other way round. The symmetric scheme's tables are the same matrices with
/// the roles of P and Q exchanged.
struct EigTable {
    int m = 0;
    std::uint64_t q = 0;
    FormKind scheme = FormKind::quadratic;
    char which = 'Q';
    std::vector<OrbitIndex> index;
    std::vector<std::vector<BigInt>> rows;
};

struct EigTables {
    EigTable P, Q;
};

/// P- and Q-tables of the quadratic scheme, with P*Q = q^(m(m+1)/2) I asserted.
inline EigTables eig_tables(int m, std::uint64_t q) {
    auto index = orbit_indices(m);
    std::size_t n = index.size();
    EigTables t;
    t.P = {m, q, FormKind::quadratic, 'P', index, {}};
    t.Q = {m, q, FormKind::quadratic, 'Q', index, {}};
    t.P.rows.assign(n, std::vector<BigInt>(n));
    t.Q.rows.assign(n, std::vector<BigInt>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            t.Q.rows[a][b] = q_number(index[a], index[b], m, q);
            t.P.rows[a][b] = p_number(index[a], index[b], m, q);
        }
    BigInt scale = form_space_size(m, q);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            BigInt dot = 0;
            for (std::size_t c = 0; c < n; ++c) dot += t.P.rows[a][c] * t.Q.rows[c][b];
            check(dot == (a == b ? scale : BigInt(0)), errc::eigen_consistency, "eig_tables: P*Q != |X| I");
        }
    return t;
}

/// Eigenvalue table of either scheme: the symmetric scheme reuses the
/// quadratic matrices through the duality Q'_i(k) = P_i(k), P'_k(i) = Q_k(i).
inline EigTable eig_table(int m, std::uint64_t q, FormKind scheme, char which) {
    check(which == 'P' || which == 'Q', errc::bad_argument, "which must be P or Q");
    EigTables t = eig_tables(m, q);
    EigTable out = (which == 'Q') == (scheme == FormKind::quadratic) ? t.Q : t.P;
    out.scheme = scheme;
    out.which = which;
    return out;
}

}  // namespace formscheme
