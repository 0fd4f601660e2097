#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "formscheme/gf.hpp"

using namespace formscheme;

TEST_CASE("prime and quartic field arithmetic", "[gf]") {
    const Field& f2 = Field::get(2, 1);
    CHECK(f2.add(1, 1) == 0);

    // F_4 = F_2[x]/(x^2+x+1); encodings: x -> 2, x+1 -> 3
    const Field& f4 = Field::get(2, 2);
    REQUIRE(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(f4.mul(2, 2) == 3);
    CHECK(f4.inv(2) == 3);
    CHECK(f4.mul(2, 3) == 1);
    CHECK_THROWS_MATCHES(f4.inv(0), error, Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::division_by_zero; }));
}

TEST_CASE("field axioms", "[gf]") {
    // exhaustive on all fields with q <= 9
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        const Field& f = Field::get(p, k);
        for (felem a = 0; a < f.q(); ++a)
            for (felem b = 0; b < f.q(); ++b) {
                REQUIRE(f.add(a, b) == f.add(b, a));
                REQUIRE(f.mul(a, b) == f.mul(b, a));
                REQUIRE(f.add(a, f.neg(a)) == 0);
                if (a) REQUIRE(f.mul(a, f.inv(a)) == 1);
                for (felem c = 0; c < f.q(); ++c) {
                    REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
    }
    // sampled on a larger field
    const Field& f = Field::get(3, 5);
    std::mt19937 rng(0);
    std::uniform_int_distribution<felem> pick(0, felem(f.q() - 1));
    for (int t = 0; t < 2000; ++t) {
        felem a = pick(rng), b = pick(rng), c = pick(rng);
        REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        if (a) REQUIRE(f.div(f.mul(a, b), a) == b);
        REQUIRE(f.pow(a, 7) == f.mul(f.pow(a, 3), f.pow(a, 4)));
    }
}

TEST_CASE("absolute trace", "[gf]") {
    const Field& f4 = Field::get(2, 2);
    CHECK(f4.abs_trace(0) == 0);
    CHECK(f4.abs_trace(1) == 0);
    CHECK(f4.abs_trace(2) == 1);  // Tr(x) = x + x^2 = 1
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {5, 2}}) {
        const Field& f = Field::get(p, k);
        for (felem y = 0; y < f.q(); ++y) {
            felem t = f.abs_trace(y);
            REQUIRE(t < f.p());                            // lands in the prime field
            REQUIRE(f.abs_trace(f.pow(y, p)) == t);        // Frobenius invariance
            for (felem z = 0; z < f.q(); ++z)
                REQUIRE(f.abs_trace(f.add(y, z)) == (f.abs_trace(y) + f.abs_trace(z)) % f.p());
        }
    }
}

TEST_CASE("relative trace", "[gf]") {
    const Tower& t83 = Tower::get(2, 1, 3);
    CHECK(t83.rel_trace(1) == 1);  // 1+1+1 in char 2
    CHECK(t83.rel_trace(0) == 0);
    const Tower& t42 = Tower::get(2, 1, 2);
    CHECK(t42.rel_trace(2) == Field::get(2, 2).abs_trace(2));

    // F_q-linearity, exhaustive for q^m <= 4096
    for (auto [p, k, m] : std::vector<std::array<int, 3>>{{2, 1, 12}, {3, 1, 7}, {2, 2, 5}, {5, 1, 4}, {3, 2, 3}}) {
        const Tower& t = Tower::get(p, k, m);
        const Field& E = t.big();
        const Field& B = t.base();
        std::vector<felem> tr(E.q());
        for (std::uint64_t y = 0; y < E.q(); ++y) tr[y] = t.rel_trace(felem(y));
        for (felem lam = 0; lam < B.q(); ++lam) {
            felem el = t.embed(lam);
            for (std::uint64_t y = 0; y < E.q(); ++y) {
                felem ly = E.mul(el, felem(y));
                for (std::uint64_t z = 0; z < E.q(); z += 7) {
                    REQUIRE(tr[E.add(ly, felem(z))] == B.add(B.mul(lam, tr[y]), tr[z]));
                }
            }
        }
        // embedding is a field homomorphism
        for (felem a = 0; a < B.q(); ++a)
            for (felem b = 0; b < B.q(); ++b) {
                REQUIRE(t.embed(B.add(a, b)) == E.add(t.embed(a), t.embed(b)));
                REQUIRE(t.embed(B.mul(a, b)) == E.mul(t.embed(a), t.embed(b)));
            }
        // traces land in the embedded base field and transitivity holds
        for (std::uint64_t y = 0; y < E.q(); ++y)
            REQUIRE(E.abs_trace(felem(y)) == B.abs_trace(tr[y]));
    }
}

TEST_CASE("dual bases", "[gf]") {
    const Tower& t = Tower::get(2, 1, 2);  // F_4 / F_2
    const Field& E = t.big();
    std::vector<felem> basis{2, E.mul(2, 2)};  // {x, x^2}
    auto dual = t.dual_basis(basis);
    CHECK(dual == basis);  // self-dual

    for (auto [p, k, m] : std::vector<std::array<int, 3>>{{2, 1, 3}, {3, 1, 3}, {2, 2, 2}, {5, 1, 2}, {2, 1, 6}}) {
        const Tower& tw = Tower::get(p, k, m);
        auto alpha = tw.polynomial_basis();
        auto beta = tw.dual_basis(alpha);
        for (std::uint32_t i = 0; i < tw.m(); ++i)
            for (std::uint32_t j = 0; j < tw.m(); ++j)
                REQUIRE(tw.rel_trace(tw.big().mul(alpha[i], beta[j])) == (i == j ? 1u : 0u));
        // dual of the dual is the original basis
        auto again = tw.dual_basis(beta);
        REQUIRE(again == alpha);
    }

    // linearly dependent input is rejected
    const Tower& t8 = Tower::get(2, 1, 3);
    std::vector<felem> bad{1, t8.gamma(), t8.big().add(1, t8.gamma())};
    CHECK_THROWS_MATCHES(t8.dual_basis(bad), error, Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::singular_basis; }));
}

TEST_CASE("linear algebra over F_q", "[gf]") {
    const Field& f2 = Field::get(2, 1);
    Mat zero(f2, 3, 3);
    CHECK(mat_rank(zero) == 0);

    Mat perm(f2, 2, 2);
    perm.at(0, 1) = 1;
    perm.at(1, 0) = 1;
    CHECK(mat_rank(perm) == 2);
    CHECK(mat_det(perm) == 1);

    Mat ones(f2, 2, 2);
    ones.at(0, 0) = ones.at(0, 1) = ones.at(1, 0) = ones.at(1, 1) = 1;
    CHECK(mat_rank(ones) == 1);
    auto ns = mat_nullspace(ones);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == std::vector<felem>{1, 1});

    // solve and inconsistency
    std::vector<felem> b{1, 1};
    auto x = mat_solve(ones, b);
    CHECK(f2.add(f2.mul(ones.at(0, 0), x[0]), f2.mul(ones.at(0, 1), x[1])) == 1);
    CHECK_THROWS_MATCHES(mat_solve(ones, std::vector<felem>{1, 0}), error,
                         Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::inconsistent_system; }));

    // rank(M) = rank(M^T), det != 0 <=> full rank, on random matrices
    std::mt19937 rng(1);
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const Field& f = Field::get(p, k);
        std::uniform_int_distribution<felem> pick(0, felem(f.q() - 1));
        for (int t = 0; t < 50; ++t) {
            int n = 1 + int(rng() % 5);
            Mat m(f, n, n);
            for (auto& v : m.e) v = pick(rng);
            REQUIRE(mat_rank(m) == mat_rank(m.transposed()));
            bool full = mat_rank(m) == n;
            REQUIRE((mat_det(m) != 0) == full);
            if (full) {
                Mat inv = mat_inverse(m);
                Mat prod = mat_mul(m, inv);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) REQUIRE(prod.at(i, j) == (i == j ? 1u : 0u));
            }
            auto basis = mat_nullspace(m);
            REQUIRE(int(basis.size()) == n - mat_rank(m));
            for (const auto& v : basis) {
                for (int i = 0; i < n; ++i) {
                    felem acc = 0;
                    for (int j = 0; j < n; ++j) acc = f.add(acc, f.mul(m.at(i, j), v[j]));
                    REQUIRE(acc == 0);
                }
            }
        }
    }
}

TEST_CASE("square classes", "[gf]") {
    const Field& f3 = Field::get(3, 1);
    CHECK(f3.is_square(1));
    CHECK_FALSE(f3.is_square(2));
    CHECK(f3.is_square(0));
    const Field& f5 = Field::get(5, 1);
    CHECK(f5.is_square(4));
    CHECK(f5.least_nonsquare() == 2);
    const Field& f2 = Field::get(2, 1);
    CHECK_THROWS_MATCHES(f2.is_square(1), error, Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::odd_char_required; }));
    // exactly (q-1)/2 nonzero squares
    const Field& f9 = Field::get(3, 2);
    int sq = 0;
    for (felem a = 1; a < f9.q(); ++a) sq += f9.is_square(a);
    CHECK(sq == 4);
}

TEST_CASE("schoolbook fallback above the table limit", "[gf]") {
    Field f(2, 17);  // q = 2^17, beyond the lookup-table threshold
    REQUIRE_FALSE(f.has_tables());
    felem a = 12345, b = 54321;
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.pow(a, 6) == f.mul(f.mul(a, a), f.pow(a, 4)));
    CHECK(f.abs_trace(a) < 2);
}

TEST_CASE("moduli table entries are irreducible", "[gf]") {
    for (const auto& e : detail::default_moduli) {
        auto poly = detail::decode_poly(e.enc, e.p);
        REQUIRE(poly.size() == e.k + 1);
        REQUIRE(poly.back() == 1);
        REQUIRE(detail::is_irreducible(poly, e.p));
    }
}
