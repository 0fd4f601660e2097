#include <catch2/catch_amalgamated.hpp>

#include "formscheme/scheme.hpp"

using namespace formscheme;

TEST_CASE("valencies", "[scheme]") {
    CHECK(valency(FormKind::quadratic, OrbitIndex::odd(1), 2, 2) == 3);
    CHECK(valency(FormKind::quadratic, OrbitIndex::even(2, +1), 2, 2) == 3);
    CHECK(valency(FormKind::quadratic, OrbitIndex::even(2, -1), 2, 2) == 1);
    for (auto [m, q] : std::vector<std::pair<int, std::uint64_t>>{{2, 2}, {3, 3}, {4, 2}, {5, 4}})
        CHECK(valency(FormKind::symmetric, OrbitIndex::odd(1), m, q) == big_pow(BigInt(q), std::uint64_t(m)) - 1);

    CHECK_THROWS_AS(valency(FormKind::quadratic, OrbitIndex::odd(5), 4, 2), error);

    // census equality: formula matches brute-force classification
    for (auto [m, p, k] : std::vector<std::array<int, 3>>{{1, 2, 1}, {2, 2, 1}, {3, 2, 1}, {2, 3, 1}, {2, 2, 2}}) {
        const Field& f = Field::get(p, k);
        for (FormKind kind : {FormKind::quadratic, FormKind::symmetric}) {
            auto census = orbit_census(f, m, kind);
            for (const auto& [i, count] : census) REQUIRE(count == valency(kind, i, m, f.q()));
        }
    }

    // mass: sum of valencies is the space size, for both kinds
    for (std::uint64_t q : {2, 3, 4, 5})
        for (int m = 1; m <= 6; ++m) {
            BigInt vsum = 0, musum = 0;
            for (const auto& i : orbit_indices(m)) {
                vsum += valency(FormKind::quadratic, i, m, q);
                musum += valency(FormKind::symmetric, i, m, q);
            }
            REQUIRE(vsum == form_space_size(m, q));
            REQUIRE(musum == form_space_size(m, q));
        }

    // odd q: the two schemes are isomorphic, so v = mu
    for (std::uint64_t q : {3, 5})
        for (int m = 1; m <= 5; ++m)
            for (const auto& i : orbit_indices(m))
                REQUIRE(valency(FormKind::quadratic, i, m, q) == valency(FormKind::symmetric, i, m, q));
}

TEST_CASE("Q-number special values", "[scheme]") {
    for (auto [m, q] : std::vector<std::pair<int, std::uint64_t>>{{2, 2}, {3, 2}, {3, 3}, {4, 2}})
        for (const auto& i : orbit_indices(m)) {
            CHECK(q_number(OrbitIndex::zero(), i, m, q) == 1);
            CHECK(q_number(i, OrbitIndex::zero(), m, q) == valency(FormKind::symmetric, i, m, q));
        }
    CHECK(q_number(OrbitIndex::odd(1), OrbitIndex::odd(1), 2, 2) == -1);
    CHECK(q_number(OrbitIndex::odd(1), OrbitIndex::zero(), 2, 2) == 3);
    // empty classes give zero
    CHECK(q_number(OrbitIndex::odd(5), OrbitIndex::odd(1), 3, 2) == 0);
    CHECK(q_number(OrbitIndex::odd(1), OrbitIndex::even(4, -1), 3, 2) == 0);
}

TEST_CASE("P-number special values", "[scheme]") {
    for (auto [m, q] : std::vector<std::pair<int, std::uint64_t>>{{2, 2}, {3, 2}, {2, 3}})
        for (const auto& k : orbit_indices(m)) {
            CHECK(p_number(OrbitIndex::zero(), k, m, q) == 1);
            CHECK(p_number(k, OrbitIndex::zero(), m, q) == valency(FormKind::quadratic, k, m, q));
        }
    CHECK(p_number(OrbitIndex::odd(1), OrbitIndex::zero(), 2, 2) == 3);
    // odd q: P and Q coincide entrywise
    for (auto [m, q] : std::vector<std::pair<int, std::uint64_t>>{{2, 3}, {3, 3}, {2, 5}})
        for (const auto& i : orbit_indices(m))
            for (const auto& k : orbit_indices(m)) REQUIRE(p_number(i, k, m, q) == q_number(i, k, m, q));
}

TEST_CASE("frozen eigenvalue tables at m=2, q=2", "[scheme]") {
    EigTables t = eig_tables(2, 2);
    std::vector<std::vector<BigInt>> expected_q{{1, 1, 1, 1}, {3, -1, 1, -3}, {1, 1, -1, -1}, {3, -1, -1, 3}};
    std::vector<std::vector<BigInt>> expected_p{{1, 1, 1, 1}, {3, -1, 3, -1}, {3, 1, -3, -1}, {1, -1, -1, 1}};
    CHECK(t.Q.rows == expected_q);
    CHECK(t.P.rows == expected_p);

    EigTables t1 = eig_tables(1, 2);
    CHECK(t1.Q.rows == std::vector<std::vector<BigInt>>{{1, 1}, {1, -1}});
}

TEST_CASE("oracle equivalence on a small grid", "[scheme]") {
    for (auto [m, p, k] : std::vector<std::array<int, 3>>{{1, 2, 1}, {2, 2, 1}, {3, 2, 1}, {1, 3, 1}, {2, 3, 1}, {2, 2, 2}}) {
        const Field& f = Field::get(p, k);
        std::uint64_t q = f.q();
        auto idx = orbit_indices(m);
        for (const auto& ki : idx)
            for (const auto& ii : idx) {
                REQUIRE(q_number(ki, ii, m, q) == oracle_q_number(ki, ii, m, f));
                REQUIRE(p_number(ii, ki, m, q) == oracle_p_number(ii, ki, m, f));
            }
        // bulk tables agree with per-entry oracles
        auto qt = oracle_q_table(f, m);
        auto pt = oracle_p_table(f, m);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) {
                REQUIRE(qt[a][b] == q_number(idx[a], idx[b], m, q));
                REQUIRE(pt[a][b] == p_number(idx[a], idx[b], m, q));
            }
    }
    // trivial sums
    const Field& f2 = Field::get(2, 1);
    CHECK(oracle_q_number(OrbitIndex::zero(), OrbitIndex::odd(1), 3, f2) == 1);
    CHECK(oracle_q_number(OrbitIndex::odd(3), OrbitIndex::zero(), 3, f2) == valency(FormKind::symmetric, OrbitIndex::odd(3), 3, 2));
    CHECK(oracle_p_number(OrbitIndex::zero(), OrbitIndex::odd(3), 3, f2) == 1);
    CHECK(oracle_p_number(OrbitIndex::odd(3), OrbitIndex::zero(), 3, f2) == valency(FormKind::quadratic, OrbitIndex::odd(3), 3, 2));
}

TEST_CASE("oracle tables are thread-count independent", "[scheme]") {
    const Field& f = Field::get(2, 1);
    auto t1 = oracle_q_table(f, 3, 1);
    auto t4 = oracle_q_table(f, 3, 4);
    CHECK(t1 == t4);
}

TEST_CASE("Q-number recurrences", "[scheme]") {
    for (std::uint64_t q : {2, 3, 4})
        for (int m = 1; m <= 5; ++m)
            for (int kr = 1; kr <= m + 1; ++kr) {
                for (int s = 0; 2 * s + 1 <= m; ++s) {
                    OrbitIndex prev = s == 0 ? OrbitIndex::zero() : OrbitIndex::even(2 * s, +1);
                    BigInt rhs = q_number_ranksum(kr, prev, m, q) -
                                 big_pow(BigInt(q), std::uint64_t(m - s)) * q_number_ranksum(kr - 1, prev, m - 1, q);
                    REQUIRE(q_number_ranksum(kr, OrbitIndex::odd(2 * s + 1), m, q) == rhs);
                }
                for (int s = 1; 2 * s <= m; ++s)
                    for (int tau : {+1, -1}) {
                        BigInt rhs = q_number_ranksum(kr, OrbitIndex::odd(2 * s - 1), m, q) +
                                     BigInt(tau) * big_pow(BigInt(q), std::uint64_t(m - s)) *
                                         q_number_ranksum(kr - 1, OrbitIndex::odd(2 * s - 1), m - 1, q);
                        REQUIRE(q_number_ranksum(kr, OrbitIndex::even(2 * s, tau), m, q) == rhs);
                    }
            }
}

TEST_CASE("grouped Q-number sums", "[scheme]") {
    auto Qn = [](int two_r, int tau, const OrbitIndex& i, int m, std::uint64_t q) {
        OrbitIndex k = tau == 0 ? OrbitIndex::odd(two_r) : OrbitIndex::even(two_r, tau);
        if (!k.valid()) return BigInt(0);
        return q_number(k, i, m, q);
    };
    for (std::uint64_t q : {2, 3})
        for (int m = 1; m <= 5; ++m)
            for (int r = 0; r <= (m + 1) / 2; ++r) {
                // F^(m+1)_r(s) = Q_{2r,1}(i) + Q_{2r,-1}(i) + Q_{2r-1}(i), rank(i) in {2s-1, 2s}
                for (int s = 1; s <= (m + 1) / 2; ++s) {
                    BigInt lhs = f_num(m + 1, r, s, q);
                    std::vector<OrbitIndex> shapes;
                    if (2 * s - 1 <= m) shapes.push_back(OrbitIndex::odd(2 * s - 1));
                    if (2 * s <= m) {
                        shapes.push_back(OrbitIndex::even(2 * s, +1));
                        shapes.push_back(OrbitIndex::even(2 * s, -1));
                    }
                    for (const auto& i : shapes) {
                        BigInt rhs = Qn(2 * r, +1, i, m, q) + Qn(2 * r, -1, i, m, q) + (r >= 1 ? Qn(2 * r - 1, 0, i, m, q) : BigInt(0));
                        REQUIRE(lhs == rhs);
                    }
                }
                // tau q^(m-s) F^(m)_r(s) = Q_{2r,1} + Q_{2r,-1} + Q_{2r+1} at (2s,tau); zero at odd ranks
                for (int s = 1; 2 * s <= m; ++s)
                    for (int tau : {+1, -1}) {
                        OrbitIndex i = OrbitIndex::even(2 * s, tau);
                        BigInt lhs = BigInt(tau) * big_pow(BigInt(q), std::uint64_t(m - s)) * f_num(m, r, s, q);
                        REQUIRE(lhs == Qn(2 * r, +1, i, m, q) + Qn(2 * r, -1, i, m, q) + Qn(2 * r + 1, 0, i, m, q));
                    }
                for (int s = 0; 2 * s + 1 <= m; ++s) {
                    OrbitIndex i = OrbitIndex::odd(2 * s + 1);
                    REQUIRE(Qn(2 * r, +1, i, m, q) + Qn(2 * r, -1, i, m, q) + Qn(2 * r + 1, 0, i, m, q) == 0);
                }
                // the type split: alpha_-1 Q_{2r,1}(i) - alpha_1 Q_{2r,-1}(i) = beta_r F^(m)_r(s)
                for (const auto& i : orbit_indices(m)) {
                    if (i == OrbitIndex::zero()) continue;
                    BigRat lhs = alpha_coef(-1, q) * BigRat(Qn(2 * r, +1, i, m, q)) - alpha_coef(+1, q) * BigRat(Qn(2 * r, -1, i, m, q));
                    REQUIRE(lhs == beta_coef(r, q) * BigRat(f_num(m, r, i.s(), q)));
                }
            }
}

TEST_CASE("row-sum law", "[scheme]") {
    for (std::uint64_t q : {2, 3})
        for (int m = 1; m <= 5; ++m) {
            auto idx = orbit_indices(m);
            for (const auto& k : idx) {
                BigInt acc = 0;
                for (const auto& i : idx) acc += q_number(k, i, m, q) * valency(FormKind::quadratic, i, m, q);
                REQUIRE(acc == (k == OrbitIndex::zero() ? form_space_size(m, q) : BigInt(0)));
            }
        }
}

TEST_CASE("symmetric-scheme tables by duality", "[scheme]") {
    for (auto [m, q] : std::vector<std::pair<int, std::uint64_t>>{{2, 2}, {3, 2}, {2, 3}, {4, 3}}) {
        EigTables quad = eig_tables(m, q);
        EigTable symQ = eig_table(m, q, FormKind::symmetric, 'Q');
        EigTable symP = eig_table(m, q, FormKind::symmetric, 'P');
        CHECK(symQ.rows == quad.P.rows);
        CHECK(symP.rows == quad.Q.rows);
    }
}
