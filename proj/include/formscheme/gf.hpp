#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formscheme/common.hpp"

namespace formscheme {

/// Field elements are canonical integer encodings in [0, p^k): the value is
/// the little-endian base-p digit string of the polynomial representative.
using felem = std::uint32_t;

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t ipow_u64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// --- dense polynomial arithmetic over F_p (little-endian digit vectors),
// used for modulus validation and as the bootstrap multiplier -------------

using ppoly = std::vector<std::uint32_t>;

inline void ptrim(ppoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
    // p prime, a != 0
    std::uint32_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = std::uint32_t((std::uint64_t(r) * b) % p);
        b = std::uint32_t((std::uint64_t(b) * b) % p);
        e >>= 1;
    }
    return r;
}

inline ppoly pmulmod(const ppoly& a, const ppoly& b, const ppoly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    ppoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = std::uint32_t((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    // reduce modulo the monic polynomial f
    std::size_t deg = f.size() - 1;
    for (std::size_t i = c.size(); i-- > deg;) {
        std::uint32_t coef = c[i];
        if (!coef) continue;
        c[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            c[i - deg + j] = std::uint32_t((c[i - deg + j] + std::uint64_t(coef) * (p - f[j] % p)) % p);
    }
    c.resize(deg);
    ptrim(c);
    return c;
}

inline ppoly ppowmod(ppoly base, std::uint64_t e, const ppoly& f, std::uint32_t p) {
    ppoly r = {1};
    while (e) {
        if (e & 1) r = pmulmod(r, base, f, p);
        base = pmulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline ppoly pgcd(ppoly a, ppoly b, std::uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b
        std::uint32_t lead_inv = mod_inv(b.back(), p);
        while (a.size() >= b.size()) {
            std::uint32_t coef = std::uint32_t((std::uint64_t(a.back()) * lead_inv) % p);
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = std::uint32_t((a[shift + j] + std::uint64_t(coef) * (p - b[j] % p)) % p);
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

/// Rabin test: monic f of degree k is irreducible over F_p iff
/// x^(p^k) = x (mod f) and gcd(x^(p^(k/r)) - x, f) = 1 for all primes r | k.
inline bool is_irreducible(const ppoly& f, std::uint32_t p) {
    std::size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    ppoly x = {0, 1};
    // iterated Frobenius: frob[j] = x^(p^j) mod f
    std::vector<ppoly> frob(k + 1);
    frob[0] = x;
    for (std::size_t j = 1; j <= k; ++j) frob[j] = ppowmod(frob[j - 1], p, f, p);
    ppoly t = frob[k];
    // x^(p^k) - x must vanish
    ppoly diff = t;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = std::uint32_t((diff[1] + p - 1) % p);
    ptrim(diff);
    if (!diff.empty()) return false;
    std::size_t kk = k;
    for (std::size_t r = 2; r <= kk; ++r) {
        if (kk % r) continue;
        ppoly d = frob[k / r];
        if (d.size() < 2) d.resize(2, 0);
        d[1] = std::uint32_t((d[1] + p - 1) % p);
        ptrim(d);
        ppoly g = pgcd(d, f, p);
        if (g.size() != 1) return false;
        while (kk % r == 0) kk /= r;
    }
    return true;
}

struct modulus_entry {
    std::uint32_t p, k;
    std::uint64_t enc;  // integer encoding including the leading coefficient
};

/// Smallest-encoding monic irreducible polynomial per (p, degree); fixed so
/// that element encodings and every serialized fixture are stable.
inline constexpr modulus_entry default_moduli[] = {
    {2, 1, 2ull},     {2, 2, 7ull},      {2, 3, 11ull},      {2, 4, 19ull},      {2, 5, 37ull},
    {2, 6, 67ull},    {2, 7, 131ull},    {2, 8, 283ull},     {2, 9, 515ull},     {2, 10, 1033ull},
    {2, 11, 2053ull}, {2, 12, 4105ull},  {3, 1, 3ull},       {3, 2, 10ull},      {3, 3, 34ull},
    {3, 4, 86ull},    {3, 5, 250ull},    {3, 6, 734ull},     {3, 7, 2198ull},    {3, 8, 6572ull},
    {3, 9, 19747ull}, {3, 10, 59068ull}, {3, 11, 177158ull}, {3, 12, 531452ull}, {5, 1, 5ull},
    {5, 2, 27ull},    {5, 3, 131ull},    {5, 4, 627ull},     {5, 5, 3146ull},    {5, 6, 15632ull},
    {5, 7, 78131ull}, {5, 8, 390627ull}, {7, 1, 7ull},       {7, 2, 50ull},      {7, 3, 345ull},
    {7, 4, 2409ull},  {7, 5, 16817ull},  {7, 6, 117651ull},  {11, 1, 11ull},     {11, 2, 122ull},
    {11, 3, 1346ull}, {11, 4, 14654ull}, {13, 1, 13ull},     {13, 2, 171ull},    {13, 3, 2199ull},
};

inline ppoly decode_poly(std::uint64_t enc, std::uint32_t p) {
    ppoly d;
    while (enc) {
        d.push_back(std::uint32_t(enc % p));
        enc /= p;
    }
    return d;
}

inline ppoly find_default_modulus(std::uint32_t p, std::uint32_t k) {
    for (const auto& e : default_moduli)
        if (e.p == p && e.k == k) return decode_poly(e.enc, p);
    // deterministic fallback: smallest-encoding monic irreducible
    std::uint64_t lead = ipow_u64(p, k);
    for (std::uint64_t low = 0; low < lead; ++low) {
        ppoly f = decode_poly(lead + low, p);
        if (is_irreducible(f, p)) return f;
    }
    raise(errc::bad_argument, "no irreducible modulus found");
}

}  // namespace detail

/// A finite field F_q with q = p^k, realized as F_p[x]/(modulus). Immutable
/// after construction; all operations are pure and safe to share across
/// threads. Lookup tables are built for q <= 2^16 and arithmetic falls back
/// to schoolbook polynomial arithmetic above that.
class Field {
   public:
    static constexpr std::uint64_t table_limit = std::uint64_t(1) << 16;
    static constexpr std::uint64_t size_limit = std::uint64_t(1) << 24;

    Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {
        check(detail::is_prime_u32(p), errc::bad_argument, "field characteristic must be prime");
        check(k >= 1, errc::bad_argument, "extension degree must be positive");
        check(modulus_.size() == k + 1 && modulus_.back() == 1, errc::bad_argument, "modulus must be monic of degree k");
        for (auto c : modulus_) check(c < p, errc::bad_argument, "modulus coefficient out of range");
        check(detail::is_irreducible(modulus_, p), errc::bad_argument, "modulus is reducible");
        std::uint64_t q = detail::ipow_u64(p, k);
        check(q <= size_limit, errc::cap_exceeded, "field size exceeds the 2^24 limit");
        q_ = q;
        if (q_ <= table_limit) build_tables();
    }

    Field(std::uint32_t p, std::uint32_t k) : Field(p, k, detail::find_default_modulus(p, k)) {}

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    /// Shared, cached field with the default modulus.
    static const Field& get(std::uint32_t p, std::uint32_t k) {
        static std::mutex mu;
        static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Field>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{p, k}];
        if (!slot) slot = std::make_unique<Field>(p, k);
        return *slot;
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t k() const noexcept { return k_; }
    std::uint64_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    bool has_tables() const noexcept { return !exp_.empty(); }

    felem add(felem a, felem b) const {
        if (p_ == 2) return a ^ b;
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        return digit_add(a, b);
    }

    felem neg(felem a) const {
        if (p_ == 2) return a;
        if (!neg_tab_.empty()) return neg_tab_[a];
        return digit_neg(a);
    }

    felem sub(felem a, felem b) const { return add(a, neg(b)); }

    felem mul(felem a, felem b) const {
        if (a == 0 || b == 0) return 0;
        if (has_tables()) return exp_[log_[a] + log_[b]];
        return school_mul(a, b);
    }

    felem inv(felem a) const {
        check(a != 0, errc::division_by_zero, "inverse of zero");
        if (has_tables()) return exp_[q_ - 1 - log_[a]];
        return school_pow(a, q_ - 2);
    }

    felem div(felem a, felem b) const { return mul(a, inv(b)); }

    felem pow(felem a, std::uint64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        if (has_tables()) return exp_[std::uint64_t(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
        return school_pow(a, e);
    }

    /// Absolute trace Tr : F_q -> F_p, Tr(y) = sum of y^(p^i), i = 1..k.
    felem abs_trace(felem y) const {
        if (!trace_tab_.empty()) return trace_tab_[y];
        felem t = 0, z = y;
        for (std::uint32_t i = 0; i < k_; ++i) {
            z = pow(z, p_);
            t = add(t, z);
        }
        return t;
    }

    /// True iff a is a square in F_q (odd q); is_square(0) = true since 0 = 0^2.
    bool is_square(felem a) const {
        check(p_ != 2, errc::odd_char_required, "square classes need odd characteristic");
        if (a == 0) return true;
        if (has_tables()) return log_[a] % 2 == 0;
        return school_pow(a, (q_ - 1) / 2) == 1;
    }

    /// Smallest nonsquare in encoding order (odd q).
    felem least_nonsquare() const {
        check(p_ != 2, errc::odd_char_required, "nonsquares need odd characteristic");
        for (felem a = 1; a < q_; ++a)
            if (!is_square(a)) return a;
        raise(errc::bad_argument, "no nonsquare found");
    }

    /// Smallest element with absolute trace 1, in encoding order.
    felem least_trace_one() const {
        for (felem a = 0; a < q_; ++a)
            if (abs_trace(a) == 1) return a;
        raise(errc::bad_argument, "no trace-one element found");
    }

    felem from_int(std::uint64_t v) const { return felem(v % q_); }

   private:
    std::uint32_t p_, k_;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<felem> exp_, log_, trace_, neg_tab_, add_tab_, trace_tab_;

    felem digit_add(felem a, felem b) const {
        felem r = 0, mult = 1;
        while (a || b) {
            std::uint32_t d = (a % p_ + b % p_) % p_;
            r += d * mult;
            mult *= p_;
            a /= p_;
            b /= p_;
        }
        return r;
    }

    felem digit_neg(felem a) const {
        felem r = 0, mult = 1;
        while (a) {
            std::uint32_t d = a % p_;
            r += (d ? p_ - d : 0) * mult;
            mult *= p_;
            a /= p_;
        }
        return r;
    }

    felem school_mul(felem a, felem b) const {
        detail::ppoly pa = detail::decode_poly(a, p_), pb = detail::decode_poly(b, p_);
        detail::ppoly c = detail::pmulmod(pa, pb, modulus_, p_);
        felem r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = felem(r * p_ + c[i]);
        return r;
    }

    felem school_pow(felem a, std::uint64_t e) const {
        felem r = 1, b = a;
        while (e) {
            if (e & 1) r = school_mul(r, b);
            b = school_mul(b, b);
            e >>= 1;
        }
        return r;
    }

    void build_tables() {
        // find a multiplicative generator, smallest in encoding order
        std::vector<std::uint64_t> prime_factors;
        std::uint64_t n = q_ - 1;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                prime_factors.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) prime_factors.push_back(n);
        felem gen = 0;
        for (felem g = 2; g < q_; ++g) {
            bool primitive = true;
            for (auto r : prime_factors)
                if (school_pow(g, (q_ - 1) / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                gen = g;
                break;
            }
        }
        check(gen != 0 || q_ == 2, errc::bad_argument, "no generator found");
        if (q_ == 2) gen = 1;
        exp_.assign(2 * (q_ - 1), 0);
        log_.assign(q_, 0);
        felem cur = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            exp_[i + (q_ - 1)] = cur;
            log_[cur] = felem(i);
            cur = school_mul(cur, gen);
        }
        check(cur == 1, errc::bad_argument, "generator order mismatch");
        if (p_ != 2) {
            neg_tab_.assign(q_, 0);
            for (felem a = 0; a < q_; ++a) neg_tab_[a] = digit_neg(a);
            if (q_ <= 512) {
                add_tab_.assign(q_ * q_, 0);
                for (felem a = 0; a < q_; ++a)
                    for (felem b = 0; b < q_; ++b) add_tab_[a * q_ + b] = digit_add(a, b);
            }
        }
        trace_tab_.assign(q_, 0);
        for (felem y = 0; y < q_; ++y) {
            felem t = 0, z = y;
            for (std::uint32_t i = 0; i < k_; ++i) {
                z = pow(z, p_);
                t = add(t, z);
            }
            trace_tab_[y] = t;
        }
    }
};

// --------------------------------------------------------------------------
// Dense matrices over F_q and Gaussian elimination.

struct Mat {
    const Field* f = nullptr;
    int rows = 0, cols = 0;
    std::vector<felem> e;

    Mat() = default;
    Mat(const Field& field, int r, int c) : f(&field), rows(r), cols(c), e(std::size_t(r) * c, 0) {}

    felem& at(int i, int j) { return e[std::size_t(i) * cols + j]; }
    felem at(int i, int j) const { return e[std::size_t(i) * cols + j]; }

    Mat transposed() const {
        Mat t(*f, cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend bool operator==(const Mat& a, const Mat& b) { return a.rows == b.rows && a.cols == b.cols && a.e == b.e; }
};

inline Mat mat_mul(const Mat& a, const Mat& b) {
    check(a.cols == b.rows, errc::dimension_mismatch, "matrix product shape");
    const Field& f = *a.f;
    Mat c(f, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int l = 0; l < a.cols; ++l) {
            felem v = a.at(i, l);
            if (!v) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) = f.add(c.at(i, j), f.mul(v, b.at(l, j)));
        }
    return c;
}

namespace detail {

/// In-place row echelon reduction. Returns rank; pivot columns appended to
/// pivots; det_out (if nonnull) receives the determinant contribution of the
/// elimination (product of pivots times swap signs) for square inputs.
inline int row_reduce(Mat& m, std::vector<int>* pivots, felem* det_out) {
    const Field& f = *m.f;
    int rank = 0;
    felem det = 1;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col)) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.e[std::size_t(piv) * m.cols + j], m.e[std::size_t(rank) * m.cols + j]);
            det = f.neg(det);
        }
        felem pval = m.at(rank, col);
        det = f.mul(det, pval);
        felem pinv = f.inv(pval);
        for (int j = col; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), pinv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            felem x = m.at(r, col);
            if (!x) continue;
            for (int j = col; j < m.cols; ++j) m.at(r, j) = f.sub(m.at(r, j), f.mul(x, m.at(rank, j)));
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    if (det_out) *det_out = (rank == m.rows && m.rows == m.cols) ? det : 0;
    return rank;
}

}  // namespace detail

inline int mat_rank(Mat m) { return detail::row_reduce(m, nullptr, nullptr); }

inline felem mat_det(Mat m) {
    check(m.rows == m.cols, errc::dimension_mismatch, "determinant of non-square matrix");
    felem det = 0;
    detail::row_reduce(m, nullptr, &det);
    return det;
}

/// Basis of the right nullspace {x : Mx = 0}, one vector per row of the result.
inline std::vector<std::vector<felem>> mat_nullspace(Mat m) {
    const Field& f = *m.f;
    std::vector<int> pivots;
    detail::row_reduce(m, &pivots, nullptr);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<felem>> basis;
    for (int free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<felem> v(m.cols, 0);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m.at(int(r), free_col));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves Mx = b; raises inconsistent_system when no solution exists.
inline std::vector<felem> mat_solve(const Mat& m, const std::vector<felem>& b) {
    check(int(b.size()) == m.rows, errc::dimension_mismatch, "solve: rhs length");
    const Field& f = *m.f;
    Mat aug(f, m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<int> pivots;
    detail::row_reduce(aug, &pivots, nullptr);
    for (int c : pivots)
        check(c != m.cols, errc::inconsistent_system, "solve: inconsistent system");
    std::vector<felem> x(m.cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(int(r), m.cols);
    return x;
}

inline Mat mat_inverse(const Mat& m) {
    check(m.rows == m.cols, errc::dimension_mismatch, "inverse of non-square matrix");
    const Field& f = *m.f;
    Mat aug(f, m.rows, 2 * m.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = 1;
    }
    std::vector<int> pivots;
    int rank = detail::row_reduce(aug, &pivots, nullptr);
    check(rank == m.rows && (pivots.empty() || pivots.back() < m.cols), errc::singular_basis, "matrix not invertible");
    Mat inv(f, m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) inv.at(i, j) = aug.at(i, m.cols + j);
    return inv;
}

/// Incrementally maintained row space over F_q, for rank and membership
/// queries over long streams of vectors.
class RowSpan {
   public:
    RowSpan(const Field& f, int cols) : f_(&f), cols_(cols) {}

    /// Inserts v into the span; returns true iff the rank grew.
    bool insert(std::vector<felem> v) {
        check(int(v.size()) == cols_, errc::dimension_mismatch, "RowSpan: vector length");
        reduce(v);
        int lead = -1;
        for (int j = 0; j < cols_; ++j)
            if (v[std::size_t(j)]) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        felem inv = f_->inv(v[std::size_t(lead)]);
        for (auto& x : v) x = f_->mul(x, inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(lead);
        return true;
    }

    bool contains(std::vector<felem> v) const {
        reduce(v);
        for (felem x : v)
            if (x) return false;
        return true;
    }

    int rank() const { return int(rows_.size()); }
    const std::vector<std::vector<felem>>& rows() const { return rows_; }

   private:
    const Field* f_;
    int cols_;
    std::vector<std::vector<felem>> rows_;
    std::vector<int> pivots_;

    void reduce(std::vector<felem>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            felem c = v[std::size_t(pivots_[r])];
            if (!c) continue;
            const auto& row = rows_[r];
            for (int j = 0; j < cols_; ++j)
                if (row[std::size_t(j)]) v[std::size_t(j)] = f_->sub(v[std::size_t(j)], f_->mul(c, row[std::size_t(j)]));
        }
    }
};

// --------------------------------------------------------------------------

/// The extension tower F_q <= F_{q^m}, with F_{q^m} realized over the prime
/// field as F_p^(k*m). Carries the subfield embedding (found as a root of
/// the base modulus), the relative trace, and a fixed "polynomial" basis
/// {1, gamma, ..., gamma^(m-1)} where gamma is the smallest element of
/// Frobenius orbit size exactly m.
class Tower {
   public:
    Tower(const Field& base, std::uint32_t m) : base_(&base), big_(&Field::get(base.p(), base.k() * m)), m_(m) {
        check(m >= 1, errc::bad_argument, "tower degree must be positive");
        check(detail::ipow_u64(base.q(), m) <= Field::size_limit, errc::cap_exceeded, "tower size exceeds the 2^24 limit");
        build_embedding();
        find_polynomial_basis();
    }

    static const Tower& get(std::uint32_t p, std::uint32_t k, std::uint32_t m) {
        static std::mutex mu;
        static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::unique_ptr<Tower>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{p, k, m}];
        if (!slot) slot = std::make_unique<Tower>(Field::get(p, k), m);
        return *slot;
    }

    const Field& base() const noexcept { return *base_; }
    const Field& big() const noexcept { return *big_; }
    std::uint32_t m() const noexcept { return m_; }
    std::uint64_t q() const noexcept { return base_->q(); }

    felem embed(felem a) const { return embed_tab_[a]; }

    /// Inverse of embed; the argument must lie in the embedded base field.
    felem unembed(felem y) const {
        if (!unembed_vec_.empty()) {
            felem v = unembed_vec_[y];
            check(v != felem(-1), errc::inconsistent_system, "element not in the embedded base field");
            return v;
        }
        auto it = unembed_tab_.find(y);
        check(it != unembed_tab_.end(), errc::inconsistent_system, "element not in the embedded base field");
        return it->second;
    }

    felem frobenius(felem y) const {
        if (!frob_tab_.empty()) return frob_tab_[y];
        return big_->pow(y, q());
    }

    /// Relative trace Tr_m : F_{q^m} -> F_q, returned as a base-field element.
    felem rel_trace(felem y) const {
        felem t = 0, z = y;
        for (std::uint32_t i = 0; i < m_; ++i) {
            z = frobenius(z);
            t = big_->add(t, z);
        }
        return unembed(t);
    }

    felem gamma() const noexcept { return gamma_; }
    const std::vector<felem>& polynomial_basis() const noexcept { return poly_basis_; }

    /// Trace-dual basis: returns beta with Tr_m(alpha_i beta_j) = delta_ij.
    std::vector<felem> dual_basis(const std::vector<felem>& alpha) const {
        check(alpha.size() == m_, errc::dimension_mismatch, "dual_basis: wrong basis length");
        Mat gram(*base_, int(m_), int(m_));
        for (std::uint32_t i = 0; i < m_; ++i)
            for (std::uint32_t j = 0; j < m_; ++j) gram.at(int(i), int(j)) = rel_trace(big_->mul(alpha[i], alpha[j]));
        if (mat_rank(gram) != int(m_)) raise(errc::singular_basis, "dual_basis: input is not a basis");
        Mat inv = mat_inverse(gram);
        std::vector<felem> beta(m_, 0);
        for (std::uint32_t j = 0; j < m_; ++j) {
            felem acc = 0;
            for (std::uint32_t l = 0; l < m_; ++l) acc = big_->add(acc, big_->mul(embed(inv.at(int(l), int(j))), alpha[l]));
            beta[j] = acc;
        }
        return beta;
    }

    /// Coordinates of y in the given basis, via the trace-dual basis.
    std::vector<felem> coordinates(felem y, const std::vector<felem>& dual) const {
        std::vector<felem> c(m_, 0);
        for (std::uint32_t j = 0; j < m_; ++j) c[j] = rel_trace(big_->mul(dual[j], y));
        return c;
    }

    /// Elements of the intermediate field F_{q^n} inside F_{q^m}, n | m.
    std::vector<felem> subfield_elements(std::uint32_t n) const {
        check(n >= 1 && m_ % n == 0, errc::bad_argument, "subfield degree must divide m");
        std::uint64_t qn = detail::ipow_u64(q(), n);
        std::vector<felem> out;
        out.reserve(std::size_t(qn));
        for (std::uint64_t y = 0; y < big_->q(); ++y)
            if (big_->pow(felem(y), qn) == felem(y)) out.push_back(felem(y));
        check(out.size() == qn, errc::inconsistent_system, "subfield has unexpected size");
        return out;
    }

   private:
    const Field* base_;
    const Field* big_;
    std::uint32_t m_;
    std::vector<felem> embed_tab_;
    std::unordered_map<felem, felem> unembed_tab_;
    std::vector<felem> unembed_vec_;  // direct lookup when the big field is table-sized
    std::vector<felem> frob_tab_;
    felem gamma_ = 0;
    std::vector<felem> poly_basis_;

    void build_embedding() {
        const Field& B = *base_;
        const Field& E = *big_;
        felem root = 0;
        if (B.k() > 1) {
            root = 0;
            bool found = false;
            for (std::uint64_t z = 0; z < E.q(); ++z) {
                // evaluate the base modulus at z (Horner)
                felem acc = 0;
                const auto& mod = B.modulus();
                for (std::size_t i = mod.size(); i-- > 0;) acc = E.add(E.mul(acc, felem(z)), mod[i]);
                if (acc == 0) {
                    root = felem(z);
                    found = true;
                    break;
                }
            }
            check(found, errc::inconsistent_system, "no root of the base modulus in the extension");
        }
        embed_tab_.assign(std::size_t(B.q()), 0);
        for (felem a = 0; a < B.q(); ++a) {
            // digits of a are the coordinates over F_p; evaluate at the root
            felem acc = 0;
            std::uint64_t v = a;
            std::vector<std::uint32_t> digits;
            while (v) {
                digits.push_back(std::uint32_t(v % B.p()));
                v /= B.p();
            }
            for (std::size_t i = digits.size(); i-- > 0;) acc = E.add(E.mul(acc, root), digits[i]);
            embed_tab_[a] = acc;
            unembed_tab_[acc] = a;
        }
        check(unembed_tab_.size() == B.q(), errc::inconsistent_system, "embedding is not injective");
        check(embed_tab_.size() < 2 || embed_tab_[1] == 1, errc::inconsistent_system, "embedding does not fix 1");
        if (E.has_tables()) {
            unembed_vec_.assign(std::size_t(E.q()), felem(-1));
            for (const auto& [big_val, base_val] : unembed_tab_) unembed_vec_[big_val] = base_val;
            frob_tab_.resize(std::size_t(E.q()));
            for (std::uint64_t y = 0; y < E.q(); ++y) frob_tab_[std::size_t(y)] = E.pow(felem(y), q());
        }
    }

    void find_polynomial_basis() {
        const Field& E = *big_;
        for (std::uint64_t v = 0; v < E.q(); ++v) {
            felem z = frobenius(felem(v));
            std::uint32_t orbit = 1;
            while (z != felem(v) && orbit <= m_) {
                z = frobenius(z);
                ++orbit;
            }
            if (orbit == m_) {
                gamma_ = felem(v);
                break;
            }
        }
        check(gamma_ != 0 || m_ == 1, errc::inconsistent_system, "no degree-m element found");
        poly_basis_.assign(m_, 1);
        for (std::uint32_t i = 1; i < m_; ++i) poly_basis_[i] = big_->mul(poly_basis_[i - 1], gamma_);
    }
};

}  // namespace formscheme
