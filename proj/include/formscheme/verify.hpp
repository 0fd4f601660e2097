#pragma once

#include <chrono>
#include <optional>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "formscheme/rmcodes.hpp"

namespace formscheme {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double millis = 0;
};

struct VerifyOptions {
    int max_m = 8;
    std::uint64_t max_q = 5;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Cap on the classification work (set size times per-member cost) of a
    /// single constructed code; combinations above it are skipped and listed.
    std::uint64_t work_cap = std::uint64_t(1) << 30;
};

namespace detail {

template <typename Fn>
CheckResult timed_check(const std::string& name, Fn&& fn) {
    CheckResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        std::ostringstream detail;
        r.pass = fn(detail);
        r.detail = detail.str();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Classification cost of one set member in field-operation units:
/// quadratic forms pay the zero count (q^m evaluations of m(m+1)/2 terms),
/// bilinear ones a Gaussian elimination.
inline std::uint64_t member_cost(FormKind kind, int m, std::uint64_t q) {
    if (kind == FormKind::symmetric) return 4ull * std::uint64_t(m) * m * m;
    std::uint64_t qm = 1;
    for (int t = 0; t < m; ++t) qm *= q;
    return qm * std::uint64_t(m) * (m + 1) / 2;
}

/// Planner-level estimate (assumes the additive fast path applies).
inline bool within_work_cap(FormKind kind, const BigInt& set_size, int m, std::uint64_t q, std::uint64_t cap) {
    return set_size * BigInt(member_cost(kind, m, q)) <= BigInt(cap);
}

/// Inner distribution of X when affordable under the work cap: additive
/// sets cost |X| classifications, general ones |X|^2.
template <typename FormT>
std::optional<InnerDist> guarded_inner_dist(const FormSet<FormT>& X, std::uint64_t work_cap) {
    BigInt unit(member_cost(FormT::kind, X.m, X.field->q()));
    BigInt n(std::uint64_t(X.size()));
    BigInt work = n * unit;
    if (!is_additive(X)) work *= n;
    if (work > BigInt(work_cap)) return std::nullopt;
    return inner_dist(X);
}

inline std::vector<std::pair<int, std::uint64_t>> census_grid(const VerifyOptions& opt) {
    std::vector<std::pair<int, std::uint64_t>> grid{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {1, 3}, {2, 3}, {3, 3}, {2, 4}, {2, 5}};
    std::vector<std::pair<int, std::uint64_t>> out;
    for (auto [m, q] : grid)
        if (m <= opt.max_m && q <= opt.max_q) out.emplace_back(m, q);
    return out;
}

inline std::vector<std::uint64_t> q_values_upto(std::uint64_t max_q) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
        if (q <= max_q) out.push_back(q);
    return out;
}

inline const Field& field_for(std::uint64_t q) {
    std::uint32_t p = 2, k = 1;
    for (std::uint32_t cand = 2; cand <= q; ++cand) {
        if (!is_prime_u32(cand)) continue;
        std::uint64_t t = q;
        std::uint32_t e = 0;
        while (t % cand == 0) {
            t /= cand;
            ++e;
        }
        if (t == 1) {
            p = cand;
            k = e;
            break;
        }
    }
    return Field::get(p, k);
}

}  // namespace detail

/// Criterion 1: full-space censuses match the valency formulas, with
/// exactly floor(3m/2)+1 nonempty classes, on the standard (m,q) grid.
inline CheckResult check_orbit_census(const VerifyOptions& opt) {
    return detail::timed_check("orbit census vs valency formulas", [&](std::ostringstream& detail) {
        int grids = 0;
        for (auto [m, q] : detail::census_grid(opt)) {
            const Field& f = detail::field_for(q);
            for (FormKind kind : {FormKind::quadratic, FormKind::symmetric}) {
                auto census = orbit_census(f, m, kind);
                int nonempty = 0;
                for (const auto& [i, count] : census) {
                    if (count != valency(kind, i, m, q)) {
                        detail << "census mismatch at m=" << m << " q=" << q << " " << kind_name(kind) << " index " << i.str();
                        return false;
                    }
                    if (count > 0) ++nonempty;
                }
                if (nonempty != 3 * m / 2 + 1) {
                    detail << "class count mismatch at m=" << m << " q=" << q;
                    return false;
                }
            }
            ++grids;
        }
        detail << grids << " (m,q) points, both kinds";
        return true;
    });
}

/// Criterion 2: closed-form P- and Q-numbers equal the character-sum
/// oracles entrywise, on the census grid extended by (4,3).
inline CheckResult check_eigenvalue_oracles(const VerifyOptions& opt) {
    return detail::timed_check("eigenvalue formulas vs character-sum oracles", [&](std::ostringstream& detail) {
        auto grid = detail::census_grid(opt);
        if (opt.max_m >= 4 && opt.max_q >= 3) grid.emplace_back(4, 3);
        int entries = 0;
        for (auto [m, q] : grid) {
            const Field& f = detail::field_for(q);
            auto index = orbit_indices(m);
            auto qt = oracle_q_table(f, m, opt.threads);
            auto pt = oracle_p_table(f, m, opt.threads);
            for (std::size_t a = 0; a < index.size(); ++a)
                for (std::size_t b = 0; b < index.size(); ++b) {
                    if (qt[a][b] != q_number(index[a], index[b], m, q)) {
                        detail << "Q mismatch at m=" << m << " q=" << q << " k=" << index[a].str() << " i=" << index[b].str();
                        return false;
                    }
                    if (pt[a][b] != p_number(index[a], index[b], m, q)) {
                        detail << "P mismatch at m=" << m << " q=" << q << " i=" << index[a].str() << " k=" << index[b].str();
                        return false;
                    }
                    entries += 2;
                }
        }
        detail << entries << " table entries checked on " << grid.size() << " grid points";
        return true;
    });
}

/// Criterion 3: Pascal identities, F-number transform and orthogonality,
/// Q-number recurrences, and P*Q = q^(m(m+1)/2) I.
inline CheckResult check_algebraic_identities(const VerifyOptions& opt) {
    return detail::timed_check("q^2-binomial, F-number and eigenvalue identities", [&](std::ostringstream& detail) {
        for (std::uint64_t q : detail::q_values_upto(std::min<std::uint64_t>(opt.max_q, 5)))
            for (std::int64_t n = 1; n <= 12; ++n)
                for (std::int64_t k = -1; k <= n + 1; ++k) {
                    BigInt b = qbinom2(n, k, q);
                    BigInt q2 = BigInt(q) * q;
                    if (b != big_pow(q2, std::uint64_t(std::max<std::int64_t>(k, 0))) * qbinom2(n - 1, k, q) + qbinom2(n - 1, k - 1, q) ||
                        b != qbinom2(n - 1, k, q) + big_pow(q2, std::uint64_t(std::max<std::int64_t>(n - k, 0))) * qbinom2(n - 1, k - 1, q)) {
                        detail << "Pascal identity fails at n=" << n << " k=" << k << " q=" << q;
                        return false;
                    }
                }
        for (std::uint64_t q : detail::q_values_upto(std::min<std::uint64_t>(opt.max_q, 4)))
            for (int m = 1; m <= std::min(opt.max_m, 8); ++m) {
                f_matrix(m, q);  // raises on an orthogonality violation
                std::int64_t n = m / 2;
                BigInt c = m % 2 == 0 ? big_pow(BigInt(q), std::uint64_t(m - 1)) : big_pow(BigInt(q), std::uint64_t(m));
                if (m == 1) c = 1;
                BigInt cj = 1;
                for (std::int64_t j = 0; j <= n; ++j) {
                    for (std::int64_t s = 0; s <= n; ++s) {
                        BigInt lhs = 0;
                        for (std::int64_t r = 0; r <= j; ++r) lhs += qbinom2(n - r, n - j, q) * f_num(m, r, s, q);
                        if (lhs != qbinom2(n - s, j, q) * cj) {
                            detail << "transform identity fails at m=" << m << " q=" << q << " j=" << j << " s=" << s;
                            return false;
                        }
                    }
                    cj *= c;
                }
            }
        for (std::uint64_t q : detail::q_values_upto(std::min<std::uint64_t>(opt.max_q, 4)))
            for (int m = 1; m <= std::min(opt.max_m, 6); ++m)
                for (int kr = 1; kr <= m + 1; ++kr) {
                    for (int s = 0; 2 * s + 1 <= m; ++s) {
                        OrbitIndex prev = s == 0 ? OrbitIndex::zero() : OrbitIndex::even(2 * s, +1);
                        BigInt rhs = q_number_ranksum(kr, prev, m, q) -
                                     big_pow(BigInt(q), std::uint64_t(m - s)) * q_number_ranksum(kr - 1, prev, m - 1, q);
                        if (q_number_ranksum(kr, OrbitIndex::odd(2 * s + 1), m, q) != rhs) {
                            detail << "recurrence 1 fails at m=" << m << " q=" << q << " k=" << kr << " s=" << s;
                            return false;
                        }
                    }
                    for (int s = 1; 2 * s <= m; ++s)
                        for (int tau : {+1, -1}) {
                            BigInt rhs = q_number_ranksum(kr, OrbitIndex::odd(2 * s - 1), m, q) +
                                         BigInt(tau) * big_pow(BigInt(q), std::uint64_t(m - s)) *
                                             q_number_ranksum(kr - 1, OrbitIndex::odd(2 * s - 1), m - 1, q);
                            if (q_number_ranksum(kr, OrbitIndex::even(2 * s, tau), m, q) != rhs) {
                                detail << "recurrence 2 fails at m=" << m << " q=" << q << " k=" << kr << " s=" << s;
                                return false;
                            }
                        }
                }
        for (auto [m, q] : detail::census_grid(opt)) eig_tables(m, q);  // raises unless P*Q = |X| I
        detail << "Pascal (n<=12), transform/orthogonality (m<=8), recurrences (m<=6), P*Q on the grid";
        return true;
    });
}

namespace detail {

/// One admissible construction on the (m <= max_m, d, q in {2,3,4}) grid,
/// described by its parameters; the set itself is built on demand.
struct PlannedConstruction {
    std::string name;
    FormKind kind;
    int m, d;
    std::uint64_t q;
    BigInt size;
    bool design_check;
    int design_t = 0;
    MaxCase dist_case = MaxCase::quad_odd_m_odd_d;
    bool has_dist = false;
    bool partial_dist = false;
    int family = 0;  // 0 sym, 1 quad_oo, 2 quad_ee, 3 elliptic
};

inline std::vector<PlannedConstruction> construction_grid(const VerifyOptions& opt) {
    std::vector<PlannedConstruction> out;
    for (std::uint64_t q : q_values_upto(std::min<std::uint64_t>(opt.max_q, 4)))
        for (int m = 1; m <= std::min(opt.max_m, 6); ++m)
            for (int d = 1; d <= m; ++d) {
                std::ostringstream tag;
                if ((m - d) % 2 == 0) {
                    PlannedConstruction c;
                    tag << "sym_dcode(" << m << "," << d << "," << q << ")";
                    c = {tag.str(), FormKind::symmetric, m, d, q,
                         big_pow(BigInt(q), std::uint64_t(m) * (m - d + 2) / 2),
                         d % 2 == 1, 0, MaxCase::quad_odd_m_odd_d, false, false, 0};
                    c.design_t = 2 * ((m + 1) / 2 - (d - 1) / 2);
                    out.push_back(c);
                }
                if (m % 2 == 1 && d % 2 == 1) {
                    PlannedConstruction c;
                    std::ostringstream t2;
                    t2 << "quad_dcode_odd_odd(" << m << "," << d << "," << q << ")";
                    c = {t2.str(), FormKind::quadratic, m, d, q,
                         big_pow(BigInt(q), std::uint64_t(m) * (m - d + 2) / 2),
                         true, 0, MaxCase::quad_odd_m_odd_d, true, false, 1};
                    c.design_t = 2 * ((m + 1) / 2 - (d - 1) / 2);
                    out.push_back(c);
                }
                if (q % 2 == 0 && m % 2 == 0 && d % 2 == 0) {
                    PlannedConstruction c;
                    std::ostringstream t2;
                    t2 << "quad_dcode_even_even(" << m << "," << d << "," << q << ")";
                    c = {t2.str(), FormKind::quadratic, m, d, q,
                         big_pow(BigInt(q), std::uint64_t(m - 1) * (m - d + 2) / 2),
                         false, 0, MaxCase::quad_even_q_even_d_partial, true, true, 2};
                    out.push_back(c);
                }
                if (m % 2 == 0 && d % 2 == 0) {
                    PlannedConstruction c;
                    std::ostringstream t2;
                    t2 << "elliptic_dcode(" << m << "," << d / 2 << "," << q << ")";
                    c = {t2.str(), FormKind::quadratic, m, d, q,
                         big_pow(BigInt(q), std::uint64_t(m) * (m / 2 - d / 2) + std::uint64_t(m / 2)),
                         false, 0, MaxCase::elliptic, true, false, 3};
                    c.design_check = true;
                    c.design_t = m - d + 1;
                    out.push_back(c);
                }
            }
    return out;
}

inline QuadSet build_quad_family(const PlannedConstruction& c, const Field& f, std::uint64_t cap) {
    if (c.family == 1) return quad_dcode_odd_odd(c.m, c.d, f, cap);
    if (c.family == 2) return quad_dcode_even_even(c.m, c.d, f, cap);
    return elliptic_dcode(c.m, c.d / 2, f, cap);
}

}  // namespace detail

/// Criterion 4: every construction on the admissible grid has the theorem
/// size, passes is_d_code, and maximal odd-d / elliptic outputs are designs
/// with the theorem's t. Combinations above the work cap are skipped.
inline CheckResult check_construction_attainment(const VerifyOptions& opt) {
    return detail::timed_check("construction sizes, d-codes, designs", [&](std::ostringstream& detail) {
        int built = 0, skipped = 0;
        for (const auto& c : detail::construction_grid(opt)) {
            if (!detail::within_work_cap(c.kind, c.size, c.m, c.q, opt.work_cap)) {
                ++skipped;
                continue;
            }
            const Field& f = detail::field_for(c.q);
            std::optional<InnerDist> dist;
            std::size_t got_size = 0;
            if (c.kind == FormKind::symmetric) {
                auto X = sym_dcode(c.m, c.d, f);
                got_size = X.size();
                dist = detail::guarded_inner_dist(X, opt.work_cap);
            } else {
                auto X = detail::build_quad_family(c, f, global_cap());
                got_size = X.size();
                dist = detail::guarded_inner_dist(X, opt.work_cap);
            }
            if (BigInt(std::uint64_t(got_size)) != c.size) {
                detail << c.name << ": size " << got_size << " != " << c.size.str();
                return false;
            }
            if (!dist) {
                ++skipped;  // non-additive set whose pairwise census is too big
                continue;
            }
            if (!is_d_code(*dist, c.d)) {
                detail << c.name << ": not a " << c.d << "-code";
                return false;
            }
            if (c.family == 3) {
                // elliptic codes additionally avoid hyperbolic rank-d differences
                if (dist->at(OrbitIndex::even(c.d, +1)) != 0) {
                    detail << c.name << ": hyperbolic rank-" << c.d << " difference present";
                    return false;
                }
            }
            if (c.design_check) {
                DualDist dual = dual_dist(c.kind, *dist, c.q);
                if (!is_t_design(dual, c.design_t)) {
                    detail << c.name << ": not a " << c.design_t << "-design";
                    return false;
                }
            }
            ++built;
        }
        detail << built << " constructions verified, " << skipped << " above the work cap";
        return built > 0;
    });
}

/// Criterion 5: census inner distributions of the maximal codes equal the
/// theoretical formulas exactly (full distributions for odd-d and elliptic
/// codes, the B_s aggregates for the even-q even-d family), including the
/// pinned (3,3,2), (5,5,2) and elliptic (4,2,2) cases.
inline CheckResult check_distribution_formulas(const VerifyOptions& opt) {
    return detail::timed_check("inner distributions of maximal codes", [&](std::ostringstream& detail) {
        const Field& f2 = Field::get(2, 1);
        {
            InnerDist d = inner_dist(quad_dcode_odd_odd(3, 3, f2));
            if (d.at(OrbitIndex::odd(3)) != 7) {
                detail << "quad_dcode_odd_odd(3,3,2): a_3 != 7";
                return false;
            }
            if (!(d == theoretical_inner_dist(MaxCase::quad_odd_m_odd_d, 3, 2, 3).full)) {
                detail << "quad_dcode_odd_odd(3,3,2) distribution mismatch";
                return false;
            }
            if (!(inner_dist(quad_dcode_odd_odd(5, 5, f2)) == theoretical_inner_dist(MaxCase::quad_odd_m_odd_d, 5, 2, 5).full)) {
                detail << "quad_dcode_odd_odd(5,5,2) distribution mismatch";
                return false;
            }
            InnerDist e = inner_dist(elliptic_dcode(4, 2, f2));
            if (e.at(OrbitIndex::even(4, -1)) != 3 || !(e == theoretical_inner_dist(MaxCase::elliptic, 4, 2, 4).full)) {
                detail << "elliptic(4,2,2) distribution mismatch";
                return false;
            }
        }
        int compared = 0, skipped = 0;
        for (const auto& c : detail::construction_grid(opt)) {
            if (c.kind != FormKind::quadratic || !c.has_dist) continue;
            if (!detail::within_work_cap(c.kind, c.size, c.m, c.q, opt.work_cap)) {
                ++skipped;
                continue;
            }
            const Field& f = detail::field_for(c.q);
            auto X = detail::build_quad_family(c, f, global_cap());
            auto census = detail::guarded_inner_dist(X, opt.work_cap);
            if (!census) {
                ++skipped;
                continue;
            }
            auto theory = theoretical_inner_dist(c.dist_case, c.m, c.q, c.d);
            if (c.partial_dist) {
                for (int s = 0; 2 * s <= c.m; ++s) {
                    BigRat agg = census->at(OrbitIndex::even(2 * s, +1)) + census->at(OrbitIndex::even(2 * s, -1)) +
                                 (2 * s + 1 <= c.m ? census->at(OrbitIndex::odd(2 * s + 1)) : BigRat(0));
                    BigRat want = theory.b_aggregates.count(s) ? theory.b_aggregates.at(s) : BigRat(0);
                    if (agg != want) {
                        detail << c.name << ": B_" << s << " = " << rat_str(agg) << " != " << rat_str(want);
                        return false;
                    }
                }
            } else if (!(*census == theory.full)) {
                detail << c.name << ": census != theoretical distribution";
                return false;
            }
            ++compared;
        }
        // the punctured odd-odd code realizes the even-m odd-d case
        auto punctured = puncture(quad_dcode_odd_odd(5, 5, f2));
        if (!(inner_dist(punctured) == theoretical_inner_dist(MaxCase::quad_even_m_odd_d, 4, 2, 3).full)) {
            detail << "punctured quad_dcode_odd_odd(5,5,2) distribution mismatch";
            return false;
        }
        detail << compared << " code distributions compared, " << skipped << " above the work cap";
        return compared > 0;
    });
}

/// Criterion 6: MacWilliams identity |X| a°_k = a'_k on every constructed
/// additive code within the work cap (annihilators via kernel solving).
inline CheckResult check_macwilliams(const VerifyOptions& opt) {
    return detail::timed_check("MacWilliams identity on constructed codes", [&](std::ostringstream& detail) {
        int checked = 0, skipped = 0, non_additive = 0;
        for (const auto& c : detail::construction_grid(opt)) {
            BigInt dual_size = form_space_size(c.m, c.q) / c.size;
            FormKind dual_kind = c.kind == FormKind::quadratic ? FormKind::symmetric : FormKind::quadratic;
            if (!detail::within_work_cap(c.kind, c.size, c.m, c.q, opt.work_cap) ||
                !detail::within_work_cap(dual_kind, dual_size, c.m, c.q, opt.work_cap)) {
                ++skipped;
                continue;
            }
            const Field& f = detail::field_for(c.q);
            bool ok;
            if (c.kind == FormKind::symmetric) {
                ok = macwilliams_check(sym_dcode(c.m, c.d, f));
            } else {
                auto X = detail::build_quad_family(c, f, global_cap());
                if (!is_additive(X)) {
                    ++non_additive;  // the even-even family need not be a subgroup
                    continue;
                }
                ok = macwilliams_check(X);
            }
            if (!ok) {
                detail << c.name << ": MacWilliams identity fails";
                return false;
            }
            ++checked;
        }
        detail << checked << " additive codes checked, " << skipped << " above the work cap, " << non_additive
               << " non-additive";
        return checked > 0;
    });
}

/// Criterion 7: the sporadic 22-element 2-code in S(3,2).
inline CheckResult check_sporadic_code(const VerifyOptions&) {
    return detail::timed_check("sporadic 22-element 2-code in S(3,2)", [&](std::ostringstream& detail) {
        auto sp = sporadic_22_code();
        if (sp.size() != 22) {
            detail << "fixture has " << sp.size() << " elements";
            return false;
        }
        InnerDist d = inner_dist(sp);
        if (!is_d_code(d, 2)) {
            detail << "fixture is not a 2-code";
            return false;
        }
        BigInt additive_bound = size_bound(FormKind::symmetric, 3, 2, 2, BoundVariant::additive);
        if (BigInt(22) <= additive_bound) {
            detail << "fixture does not exceed the additive bound";
            return false;
        }
        detail << "size 22 > additive bound " << additive_bound.str();
        return true;
    });
}

/// Criterion 8: coset censuses equal the closed-form omega tables for every
/// form at (2,2), (3,2), (2,3), (2,4), and omega_i(1) = q^(m+1) on the
/// larger grid.
inline CheckResult check_coset_enumerators(const VerifyOptions& opt) {
    return detail::timed_check("coset weight enumerators", [&](std::ostringstream& detail) {
        std::vector<std::pair<int, std::uint64_t>> grid{{2, 2}, {3, 2}, {2, 3}, {2, 4}};
        int cosets = 0;
        for (auto [m, q] : grid) {
            if (m > opt.max_m || q > opt.max_q) continue;
            const Field& f = detail::field_for(q);
            const Tower& t = Tower::get(f.p(), f.k(), std::uint32_t(m));
            bool ok = true;
            for_each_quad(f, m, [&](const QuadForm& qf) {
                if (!(coset_enum_brute(t, qf) == omega(classify(qf), m, q))) ok = false;
                ++cosets;
            });
            if (!ok) {
                detail << "coset census mismatch at m=" << m << " q=" << q;
                return false;
            }
        }
        for (std::uint64_t q : detail::q_values_upto(std::min<std::uint64_t>(opt.max_q, 5)))
            for (int m = 1; m <= std::min(opt.max_m, 6); ++m)
                for (const auto& i : orbit_indices(m))
                    if (omega(i, m, q).total() != BigRat(big_pow(BigInt(q), std::uint64_t(m) + 1))) {
                        detail << "omega mass fails at m=" << m << " q=" << q << " i=" << i.str();
                        return false;
                    }
        detail << cosets << " cosets enumerated exhaustively";
        return cosets > 0;
    });
}

/// Criterion 9: C(Y) for Y = quad_dcode_odd_odd(5,5,2) is a [31, 2^11]
/// code of minimum distance exactly 11 = designed distance, with the brute
/// and theoretical distance enumerators equal term by term.
inline CheckResult check_headline_code(const VerifyOptions&) {
    return detail::timed_check("headline [31, 2^11, 11] code", [&](std::ostringstream& detail) {
        const Field& f2 = Field::get(2, 1);
        auto y = quad_dcode_odd_odd(5, 5, f2);
        auto c = make_code(y);
        if (c.length != 31 || c.size != 2048) {
            detail << "length/size mismatch: " << c.length << ", " << c.size.str();
            return false;
        }
        WeightEnumerator brute = dist_enum_brute(c);
        WeightEnumerator theory = dist_enum_theory(y);
        if (!(brute == theory)) {
            detail << "brute and theoretical enumerators differ";
            return false;
        }
        std::uint64_t dmin = min_distance(c);
        if (dmin != 11 || designed_distance(5, 2, 2) != 11) {
            detail << "minimum distance " << dmin << " != designed 11";
            return false;
        }
        detail << "length 31, size 2048, minimum distance 11, enumerators equal";
        return true;
    });
}

/// Criterion 10: the guard paths reject what the theory does not cover.
inline CheckResult check_guards(const VerifyOptions&) {
    return detail::timed_check("degenerate and unsupported-case guards", [&](std::ostringstream& detail) {
        const Field& f2 = Field::get(2, 1);
        QuadForm rank1(f2, 3);
        rank1.at(0, 0) = 1;
        auto bad = make_form_set(f2, 3, std::vector<QuadForm>{QuadForm(f2, 3), rank1});
        try {
            make_code(bad);
            detail << "degenerate q=2 set was not rejected";
            return false;
        } catch (const error& e) {
            if (e.code() != errc::degenerate_set) {
                detail << "wrong error for degenerate set";
                return false;
            }
        }
        try {
            canonical_quad(OrbitIndex::even(0, -1), 2, f2);
            detail << "(0,-1) index was not rejected";
            return false;
        } catch (const error& e) {
            if (e.code() != errc::inadmissible_index) {
                detail << "wrong error for (0,-1)";
                return false;
            }
        }
        for (auto [kind, q] : std::vector<std::pair<FormKind, std::uint64_t>>{{FormKind::symmetric, 2},
                                                                              {FormKind::symmetric, 3},
                                                                              {FormKind::quadratic, 3}}) {
            try {
                size_bound(kind, 4, q, 2, BoundVariant::general);
                detail << "uncovered even-d bound was not refused";
                return false;
            } catch (const error& e) {
                if (e.code() != errc::unsupported_case) {
                    detail << "wrong error for uncovered bound";
                    return false;
                }
            }
        }
        detail << "degenerate set, (0,-1) index, and uncovered bounds all rejected";
        return true;
    });
}

/// All ten acceptance checks, in order.
inline std::vector<CheckResult> run_acceptance(const VerifyOptions& opt) {
    return {
        check_orbit_census(opt),          check_eigenvalue_oracles(opt), check_algebraic_identities(opt),
        check_construction_attainment(opt), check_distribution_formulas(opt), check_macwilliams(opt),
        check_sporadic_code(opt),         check_coset_enumerators(opt), check_headline_code(opt),
        check_guards(opt),
    };
}

/// Named suites for the command-line verifier.
inline std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt) {
    if (suite == "qnum") return {check_algebraic_identities(opt)};
    if (suite == "scheme") return {check_orbit_census(opt), check_eigenvalue_oracles(opt), check_algebraic_identities(opt)};
    if (suite == "codesets") return {check_macwilliams(opt), check_sporadic_code(opt), check_guards(opt)};
    if (suite == "construct") return {check_construction_attainment(opt), check_distribution_formulas(opt)};
    if (suite == "rmcodes") return {check_coset_enumerators(opt), check_headline_code(opt)};
    if (suite == "all") return run_acceptance(opt);
    raise(errc::bad_argument, "unknown suite: " + suite);
}

}  // namespace formscheme
