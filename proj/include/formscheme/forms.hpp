#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "formscheme/bigint.hpp"
#include "formscheme/gf.hpp"

namespace formscheme {

enum class FormKind { quadratic, symmetric };

inline const char* kind_name(FormKind k) { return k == FormKind::quadratic ? "quadratic" : "symmetric"; }

/// Index of a G-orbit: an odd rank r, or a pair (even rank r, type tau) with
/// tau = +1 (hyperbolic) or -1 (elliptic). Rank 0 exists only as (0, +1).
struct OrbitIndex {
    int r = 0;
    int tau = +1;  // +1/-1 for even rank, 0 for odd rank

    static OrbitIndex odd(int rank) { return {rank, 0}; }
    static OrbitIndex even(int rank, int type) { return {rank, type}; }
    static OrbitIndex zero() { return {0, +1}; }

    bool even_rank() const { return r % 2 == 0; }
    int s() const { return r / 2; }

    bool valid() const {
        if (r < 0) return false;
        if (r % 2 == 0) return tau == +1 || (tau == -1 && r > 0);
        return tau == 0;
    }
    bool admissible(int m) const { return valid() && r <= m; }

    std::string str() const {
        if (r % 2) return std::to_string(r);
        return std::to_string(r) + (tau == +1 ? "+" : "-");
    }

    static OrbitIndex parse(const std::string& s) {
        check(!s.empty(), errc::bad_argument, "empty orbit index");
        char last = s.back();
        if (last == '+' || last == '-') {
            int rank = std::stoi(s.substr(0, s.size() - 1));
            return even(rank, last == '+' ? +1 : -1);
        }
        return odd(std::stoi(s));
    }

    friend bool operator==(const OrbitIndex& a, const OrbitIndex& b) = default;
    friend bool operator<(const OrbitIndex& a, const OrbitIndex& b) {
        if (a.r != b.r) return a.r < b.r;
        return a.tau > b.tau;  // within even rank: + before -
    }
};

/// The index set I for dimension m, in the fixed canonical order: by rank
/// ascending, within even rank type +1 before -1. Has floor(3m/2)+1 entries.
inline std::vector<OrbitIndex> orbit_indices(int m) {
    std::vector<OrbitIndex> out;
    out.push_back(OrbitIndex::zero());
    for (int r = 1; r <= m; ++r) {
        if (r % 2) {
            out.push_back(OrbitIndex::odd(r));
        } else {
            out.push_back(OrbitIndex::even(r, +1));
            out.push_back(OrbitIndex::even(r, -1));
        }
    }
    return out;
}

inline int orbit_position(const std::vector<OrbitIndex>& index, const OrbitIndex& i) {
    for (std::size_t t = 0; t < index.size(); ++t)
        if (index[t] == i) return int(t);
    raise(errc::inadmissible_index, "orbit index " + i.str() + " not in the index set");
}

inline int form_space_dim(int m) { return m * (m + 1) / 2; }

/// q^(m(m+1)/2), the common size of Q(m,q) and S(m,q).
inline BigInt form_space_size(int m, std::uint64_t q) { return big_pow(BigInt(q), std::uint64_t(form_space_dim(m))); }

/// A quadratic form on V(m,q) stored as the canonical upper-triangular
/// coefficient matrix (the fixed coset representative modulo alternating
/// matrices): Q(sum x_i a_i) = sum_{i<=j} A_ij x_i x_j.
struct QuadForm {
    const Field* field = nullptr;
    int m = 0;
    std::vector<felem> a;  // m*m row-major, zero strictly below the diagonal

    QuadForm() = default;
    QuadForm(const Field& f, int dim) : field(&f), m(dim), a(std::size_t(dim) * dim, 0) {}

    felem& at(int i, int j) { return a[std::size_t(i) * m + j]; }
    felem at(int i, int j) const { return a[std::size_t(i) * m + j]; }

    felem eval(const felem* x) const {
        const Field& f = *field;
        felem acc = 0;
        for (int i = 0; i < m; ++i) {
            if (!x[i]) continue;
            for (int j = i; j < m; ++j) {
                felem c = at(i, j);
                if (c && x[j]) acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
            }
        }
        return acc;
    }
    felem eval(const std::vector<felem>& x) const {
        check(int(x.size()) == m, errc::dimension_mismatch, "quad_eval: coordinate length");
        return eval(x.data());
    }

    bool is_zero() const {
        for (felem v : a)
            if (v) return false;
        return true;
    }

    const std::vector<felem>& coeffs() const { return a; }
    std::vector<felem>& coeffs() { return a; }
    static constexpr FormKind kind = FormKind::quadratic;

    friend bool operator==(const QuadForm& x, const QuadForm& y) { return x.m == y.m && x.a == y.a; }
    friend bool operator<(const QuadForm& x, const QuadForm& y) { return x.a < y.a; }
};

/// A symmetric bilinear form stored as its Gram matrix B_ij = S(b_i, b_j).
struct SymForm {
    const Field* field = nullptr;
    int m = 0;
    std::vector<felem> b;  // m*m row-major, symmetric

    SymForm() = default;
    SymForm(const Field& f, int dim) : field(&f), m(dim), b(std::size_t(dim) * dim, 0) {}

    felem& at(int i, int j) { return b[std::size_t(i) * m + j]; }
    felem at(int i, int j) const { return b[std::size_t(i) * m + j]; }

    felem eval(const std::vector<felem>& x, const std::vector<felem>& y) const {
        check(int(x.size()) == m && int(y.size()) == m, errc::dimension_mismatch, "sym_eval: coordinate length");
        const Field& f = *field;
        felem acc = 0;
        for (int i = 0; i < m; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < m; ++j)
                if (y[j]) acc = f.add(acc, f.mul(at(i, j), f.mul(x[i], y[j])));
        }
        return acc;
    }

    bool is_zero() const {
        for (felem v : b)
            if (v) return false;
        return true;
    }

    const std::vector<felem>& coeffs() const { return b; }
    std::vector<felem>& coeffs() { return b; }
    static constexpr FormKind kind = FormKind::symmetric;

    Mat gram() const {
        Mat g(*field, m, m);
        g.e = b;
        return g;
    }

    friend bool operator==(const SymForm& x, const SymForm& y) { return x.m == y.m && x.b == y.b; }
    friend bool operator<(const SymForm& x, const SymForm& y) { return x.b < y.b; }
};

/// Entrywise difference of two forms of the same kind.
template <typename FormT>
FormT form_sub(const FormT& x, const FormT& y) {
    check(x.m == y.m && x.field == y.field, errc::dimension_mismatch, "form_sub: mismatched forms");
    FormT out = x;
    for (std::size_t t = 0; t < out.coeffs().size(); ++t) out.coeffs()[t] = x.field->sub(x.coeffs()[t], y.coeffs()[t]);
    return out;
}

template <typename FormT>
FormT form_add(const FormT& x, const FormT& y) {
    check(x.m == y.m && x.field == y.field, errc::dimension_mismatch, "form_add: mismatched forms");
    FormT out = x;
    for (std::size_t t = 0; t < out.coeffs().size(); ++t) out.coeffs()[t] = x.field->add(x.coeffs()[t], y.coeffs()[t]);
    return out;
}

/// Polarization S_Q(x,y) = Q(x+y) - Q(x) - Q(y); the Gram matrix is A + A^T.
/// Alternating (zero diagonal) in even characteristic.
inline SymForm polarize(const QuadForm& qf) {
    const Field& f = *qf.field;
    SymForm s(f, qf.m);
    for (int i = 0; i < qf.m; ++i)
        for (int j = 0; j < qf.m; ++j) s.at(i, j) = f.add(qf.at(i, j), qf.at(j, i));
    return s;
}

/// Number of zeros |{x in F_q^m : Q(x) = 0}|, by full enumeration.
inline std::uint64_t zero_count(const QuadForm& qf) {
    const Field& f = *qf.field;
    std::uint64_t q = f.q();
    std::uint64_t total = 1;
    for (int i = 0; i < qf.m; ++i) total *= q;
    std::vector<felem> x(std::size_t(qf.m), 0);
    std::uint64_t zeros = 0;
    for (std::uint64_t it = 0;; ++it) {
        if (qf.eval(x.data()) == 0) ++zeros;
        if (it + 1 == total) break;
        int pos = qf.m - 1;
        while (true) {
            if (++x[pos] == q) {
                x[pos] = 0;
                --pos;
            } else {
                break;
            }
        }
    }
    return zeros;
}

/// Expected zero count by rank/type: q^(m-1) for odd rank, and
/// q^(m-1) + tau (q-1) q^(m-s-1) for rank 2s (q^m for the zero form).
inline std::uint64_t expected_zero_count(const OrbitIndex& i, int m, std::uint64_t q) {
    std::uint64_t qm1 = 1;
    for (int t = 0; t < m - 1; ++t) qm1 *= q;
    if (!i.even_rank()) return qm1;
    if (i.r == 0) return qm1 * q;
    std::uint64_t qms1 = 1;
    for (int t = 0; t < m - i.s() - 1; ++t) qms1 *= q;
    return i.tau == +1 ? qm1 + (q - 1) * qms1 : qm1 - (q - 1) * qms1;
}

/// Rank and type of a quadratic form. The rank is m - dim rad(Q): the polar
/// form's rank, plus one when Q does not vanish on rad(S_Q). The type of an
/// even-rank form is read off the zero count, which is also cross-checked
/// against the rank for odd-rank forms.
inline OrbitIndex classify(const QuadForm& qf) {
    const Field& f = *qf.field;
    SymForm s = polarize(qf);
    Mat gram = s.gram();
    auto radical = mat_nullspace(gram);
    int polar_rank = qf.m - int(radical.size());
    bool restriction_zero = true;
    for (const auto& v : radical)
        if (qf.eval(v.data()) != 0) {
            restriction_zero = false;
            break;
        }
    int rank = restriction_zero ? polar_rank : polar_rank + 1;
    std::uint64_t zeros = zero_count(qf);
    if (rank % 2) {
        check(zeros == expected_zero_count(OrbitIndex::odd(rank), qf.m, f.q()), errc::classification_inconsistency,
              "odd-rank form with unexpected zero count");
        return OrbitIndex::odd(rank);
    }
    if (rank == 0) {
        check(qf.is_zero(), errc::classification_inconsistency, "rank-0 form is not zero");
        return OrbitIndex::zero();
    }
    for (int tau : {+1, -1}) {
        OrbitIndex i = OrbitIndex::even(rank, tau);
        if (zeros == expected_zero_count(i, qf.m, f.q())) return i;
    }
    raise(errc::classification_inconsistency, "zero count matches no admissible type");
}

/// Rank and type of a symmetric bilinear form. Even q: type +1 iff the form
/// is alternating. Odd q: type from the square class of (-1)^s det of the
/// Gram restricted to a complement of the radical.
inline OrbitIndex classify(const SymForm& sf) {
    const Field& f = *sf.field;
    Mat gram = sf.gram();
    int rank = mat_rank(gram);
    if (rank % 2) return OrbitIndex::odd(rank);
    if (rank == 0) return OrbitIndex::zero();
    int s = rank / 2;
    if (f.p() == 2) {
        bool alternating = true;
        for (int i = 0; i < sf.m; ++i)
            if (sf.at(i, i)) {
                alternating = false;
                break;
            }
        return OrbitIndex::even(rank, alternating ? +1 : -1);
    }
    // greedily extend the radical to a basis by standard vectors; the picked
    // coordinates span a complement, whose Gram is a principal submatrix
    auto radical = mat_nullspace(gram);
    Mat span(f, sf.m, sf.m);
    int rows = 0;
    for (const auto& v : radical) {
        for (int j = 0; j < sf.m; ++j) span.at(rows, j) = v[j];
        ++rows;
    }
    std::vector<int> picked;
    for (int i = 0; i < sf.m && int(picked.size()) < rank; ++i) {
        span.at(rows, i) = 1;
        Mat probe = span;
        probe.rows = rows + 1;
        probe.e.resize(std::size_t(probe.rows) * probe.cols);
        if (mat_rank(probe) == rows + 1) {
            picked.push_back(i);
            ++rows;
        } else {
            span.at(rows, i) = 0;
        }
    }
    check(int(picked.size()) == rank, errc::classification_inconsistency, "could not build a radical complement");
    Mat sub(f, rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) sub.at(i, j) = sf.at(picked[i], picked[j]);
    felem d = mat_det(sub);
    check(d != 0, errc::classification_inconsistency, "degenerate restriction to the complement");
    felem sign = (s % 2) ? f.neg(1) : felem(1);
    return OrbitIndex::even(rank, f.is_square(f.mul(sign, d)) ? +1 : -1);
}

/// Character pairing <Q,S> = chi(tr(AB)) tracked as the exponent of the
/// fixed primitive p-th root of unity: e = Tr(tr(AB)) in [0, p). Uses the
/// fixed character with theta = 1; tr(AB) = sum_{i<=j} A_ij B_ij.
inline int pairing_exponent(const QuadForm& qf, const SymForm& sf) {
    check(qf.m == sf.m && qf.field == sf.field, errc::dimension_mismatch, "pairing: mismatched forms");
    const Field& f = *qf.field;
    felem tr = 0;
    for (int i = 0; i < qf.m; ++i)
        for (int j = i; j < qf.m; ++j) {
            felem c = qf.at(i, j);
            if (c) tr = f.add(tr, f.mul(c, sf.at(i, j)));
        }
    return int(f.abs_trace(tr));
}

namespace detail {

inline void check_transform(felem a, const Mat& L, int m) {
    check(a != 0, errc::singular_transform, "transform scalar must be nonzero");
    check(L.rows == m && L.cols == m, errc::dimension_mismatch, "transform matrix shape");
    check(mat_rank(L) == m, errc::singular_transform, "transform matrix is singular");
}

}  // namespace detail

/// Q^g(x) = a Q(Lx): coefficient matrix is the upper-triangular fold of a L^T A L.
inline QuadForm transformed(const QuadForm& qf, felem a, const Mat& L) {
    const Field& f = *qf.field;
    detail::check_transform(a, L, qf.m);
    Mat A(f, qf.m, qf.m);
    A.e = qf.a;
    Mat M = mat_mul(mat_mul(L.transposed(), A), L);
    QuadForm out(f, qf.m);
    for (int i = 0; i < qf.m; ++i) {
        out.at(i, i) = f.mul(a, M.at(i, i));
        for (int j = i + 1; j < qf.m; ++j) out.at(i, j) = f.mul(a, f.add(M.at(i, j), M.at(j, i)));
    }
    return out;
}

/// S^g(x,y) = a S(Lx, Ly): Gram matrix a L^T B L.
inline SymForm transformed(const SymForm& sf, felem a, const Mat& L) {
    const Field& f = *sf.field;
    detail::check_transform(a, L, sf.m);
    Mat M = mat_mul(mat_mul(L.transposed(), sf.gram()), L);
    SymForm out(f, sf.m);
    for (auto& v : M.e) v = f.mul(a, v);
    out.b = M.e;
    return out;
}

/// Canonical orbit representative: hyperbolic planes x_{2i-1} x_{2i}, plus
/// x_r^2 for odd rank, or the elliptic tail with the fixed alpha (even q,
/// least element of trace 1) or -beta (odd q, least nonsquare).
inline QuadForm canonical_quad(const OrbitIndex& i, int m, const Field& f) {
    check(i.admissible(m), errc::inadmissible_index, "inadmissible orbit index " + i.str() + " for m=" + std::to_string(m));
    QuadForm qf(f, m);
    int r = i.r;
    if (r == 0) return qf;
    if (r % 2) {
        for (int t = 0; t + 1 < r; t += 2) qf.at(t, t + 1) = 1;
        qf.at(r - 1, r - 1) = 1;
        return qf;
    }
    int pairs = (i.tau == +1) ? r / 2 : r / 2 - 1;
    for (int t = 0; t < 2 * pairs; t += 2) qf.at(t, t + 1) = 1;
    if (i.tau == -1) {
        if (f.p() == 2) {
            qf.at(r - 2, r - 2) = 1;
            qf.at(r - 2, r - 1) = 1;
            qf.at(r - 1, r - 1) = f.least_trace_one();
        } else {
            qf.at(r - 2, r - 2) = 1;
            qf.at(r - 1, r - 1) = f.neg(f.least_nonsquare());
        }
    }
    return qf;
}

inline SymForm canonical_sym(const OrbitIndex& i, int m, const Field& f) {
    check(i.admissible(m), errc::inadmissible_index, "inadmissible orbit index " + i.str() + " for m=" + std::to_string(m));
    SymForm sf(f, m);
    int r = i.r;
    if (r == 0) return sf;
    auto plane = [&](int t) {
        sf.at(t, t + 1) = 1;
        sf.at(t + 1, t) = 1;
    };
    if (r % 2) {
        for (int t = 0; t + 1 < r; t += 2) plane(t);
        sf.at(r - 1, r - 1) = 1;
        return sf;
    }
    int pairs = (i.tau == +1) ? r / 2 : r / 2 - 1;
    for (int t = 0; t < 2 * pairs; t += 2) plane(t);
    if (i.tau == -1) {
        if (f.p() == 2) {
            // x_{r-1} y_r + x_r y_{r-1} + x_r y_r
            sf.at(r - 2, r - 1) = 1;
            sf.at(r - 1, r - 2) = 1;
            sf.at(r - 1, r - 1) = 1;
        } else {
            sf.at(r - 2, r - 2) = 1;
            sf.at(r - 1, r - 1) = f.neg(f.least_nonsquare());
        }
    }
    return sf;
}

// --------------------------------------------------------------------------
// Enumeration of the full spaces Q(m,q) and S(m,q), in lexicographic order
// of the upper-triangle coefficient tuple (row-major, first entry most
// significant).

namespace detail {

inline std::vector<std::pair<int, int>> upper_positions(int m) {
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) pos.emplace_back(i, j);
    return pos;
}

}  // namespace detail

inline std::uint64_t checked_space_size(int m, const Field& f, std::uint64_t cap, const char* what) {
    BigInt total = form_space_size(m, f.q());
    check(total <= BigInt(cap), errc::cap_exceeded,
          std::string(what) + ": space size " + total.str() + " exceeds cap " + std::to_string(cap));
    return total.convert_to<std::uint64_t>();
}

/// Calls fn(form) for every quadratic form on V(m,q), reusing one buffer.
template <typename Fn>
void for_each_quad(const Field& f, int m, Fn&& fn, std::uint64_t cap = global_cap()) {
    std::uint64_t total = checked_space_size(m, f, cap, "for_each_quad");
    auto pos = detail::upper_positions(m);
    QuadForm qf(f, m);
    std::uint64_t q = f.q();
    for (std::uint64_t it = 0;; ++it) {
        fn(static_cast<const QuadForm&>(qf));
        if (it + 1 == total) break;
        int t = int(pos.size()) - 1;
        while (true) {
            auto [i, j] = pos[t];
            felem v = qf.at(i, j) + 1;
            if (v == q) {
                qf.at(i, j) = 0;
                --t;
            } else {
                qf.at(i, j) = v;
                break;
            }
        }
    }
}

/// Calls fn(form) for every symmetric bilinear form on V(m,q).
template <typename Fn>
void for_each_sym(const Field& f, int m, Fn&& fn, std::uint64_t cap = global_cap()) {
    std::uint64_t total = checked_space_size(m, f, cap, "for_each_sym");
    auto pos = detail::upper_positions(m);
    SymForm sf(f, m);
    std::uint64_t q = f.q();
    for (std::uint64_t it = 0;; ++it) {
        fn(static_cast<const SymForm&>(sf));
        if (it + 1 == total) break;
        int t = int(pos.size()) - 1;
        while (true) {
            auto [i, j] = pos[t];
            felem v = sf.at(i, j) + 1;
            if (v == q) {
                sf.at(i, j) = 0;
                sf.at(j, i) = 0;
                --t;
            } else {
                sf.at(i, j) = v;
                sf.at(j, i) = v;
                break;
            }
        }
    }
}

/// Form with the given position in the lexicographic enumeration order.
inline QuadForm quad_at_index(const Field& f, int m, std::uint64_t idx) {
    auto pos = detail::upper_positions(m);
    QuadForm qf(f, m);
    for (std::size_t t = pos.size(); t-- > 0;) {
        auto [i, j] = pos[t];
        qf.at(i, j) = felem(idx % f.q());
        idx /= f.q();
    }
    return qf;
}

inline SymForm sym_at_index(const Field& f, int m, std::uint64_t idx) {
    auto pos = detail::upper_positions(m);
    SymForm sf(f, m);
    for (std::size_t t = pos.size(); t-- > 0;) {
        auto [i, j] = pos[t];
        felem v = felem(idx % f.q());
        sf.at(i, j) = v;
        sf.at(j, i) = v;
        idx /= f.q();
    }
    return sf;
}

/// Class sizes of the whole space by brute-force classification.
inline std::vector<std::pair<OrbitIndex, BigInt>> orbit_census(const Field& f, int m, FormKind kind, std::uint64_t cap = global_cap()) {
    auto index = orbit_indices(m);
    std::vector<BigInt> counts(index.size(), 0);
    auto tally = [&](const OrbitIndex& i) { counts[std::size_t(orbit_position(index, i))] += 1; };
    if (kind == FormKind::quadratic)
        for_each_quad(f, m, [&](const QuadForm& qf) { tally(classify(qf)); }, cap);
    else
        for_each_sym(f, m, [&](const SymForm& sf) { tally(classify(sf)); }, cap);
    std::vector<std::pair<OrbitIndex, BigInt>> out;
    for (std::size_t t = 0; t < index.size(); ++t) out.emplace_back(index[t], counts[t]);
    return out;
}

}  // namespace formscheme
