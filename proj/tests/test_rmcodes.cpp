#include <catch2/catch_amalgamated.hpp>

#include "formscheme/rmcodes.hpp"

using namespace formscheme;

TEST_CASE("punctured first-order Reed-Muller code", "[rmcodes]") {
    const Field& f2 = Field::get(2, 1);

    // m=1: four words of length 1, zero word included
    const Tower& t1 = Tower::get(2, 1, 1);
    int words = 0;
    bool zero_seen = false;
    for_each_rm1_word(t1, [&](const std::vector<felem>& w) {
        ++words;
        if (w[0] == 0) zero_seen = true;
    });
    CHECK(words == 4);
    CHECK(zero_seen);

    // m=3 weight census: 1 + 7z^3 + 7z^4 + z^7
    WeightEnumerator rm = rm1_star_enum(3, f2);
    CHECK(rm.length == 7);
    CHECK(rm.at(0) == 1);
    CHECK(rm.at(3) == 7);
    CHECK(rm.at(4) == 7);
    CHECK(rm.at(7) == 1);
    CHECK(rm.total() == 16);

    // the word set is additive: closed under coordinatewise sums
    const Tower& t2 = Tower::get(2, 1, 2);
    std::set<std::vector<felem>> wordset;
    for_each_rm1_word(t2, [&](const std::vector<felem>& w) { wordset.insert(w); });
    for (const auto& a : wordset)
        for (const auto& b : wordset) {
            std::vector<felem> sum(a.size());
            for (std::size_t x = 0; x < a.size(); ++x) sum[x] = f2.add(a[x], b[x]);
            REQUIRE(wordset.count(sum) == 1);
        }
}

TEST_CASE("coset weight enumerators", "[rmcodes]") {
    const Field& f2 = Field::get(2, 1);
    // the zero-form coset is R_q(1,m)* itself
    CHECK(omega(OrbitIndex::zero(), 3, 2) == rm1_star_enum(3, f2));

    // omega(1) = q^(m+1) for all admissible indices
    for (std::uint64_t q : {2, 3, 4, 5})
        for (int m = 1; m <= 6; ++m)
            for (const auto& i : orbit_indices(m))
                REQUIRE(omega(i, m, q).total() == BigRat(big_pow(BigInt(q), std::uint64_t(m) + 1)));

    // rank-3 coset at m=3, q=2 contains a single word of weight 1
    WeightEnumerator w3 = omega(OrbitIndex::odd(3), 3, 2);
    CHECK(w3.at(1) == 1);

    CHECK_THROWS_MATCHES(omega(OrbitIndex::odd(5), 3, 2), error,
                         Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::inadmissible_index; }));

    // brute-force censuses agree with the closed form for every coset
    for (auto [m, p, k] : std::vector<std::array<int, 3>>{{2, 2, 1}, {2, 3, 1}}) {
        const Field& f = Field::get(p, k);
        const Tower& t = Tower::get(p, k, m);
        for_each_quad(f, m, [&](const QuadForm& qf) { REQUIRE(coset_enum_brute(t, qf) == omega(classify(qf), m, f.q())); });
    }
}

TEST_CASE("code construction and degeneracy guard", "[rmcodes]") {
    const Field& f2 = Field::get(2, 1);
    auto y = quad_dcode_odd_odd(3, 3, f2);
    auto c = make_code(y);
    CHECK(c.length == 7);
    CHECK(c.size == 128);

    QuadForm rank1(f2, 3);
    rank1.at(0, 0) = 1;
    auto bad = make_form_set(f2, 3, std::vector<QuadForm>{QuadForm(f2, 3), rank1});
    CHECK_THROWS_MATCHES(make_code(bad), error,
                         Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::degenerate_set; }));
    CHECK_THROWS_AS(dist_enum_theory(bad), error);

    // q > 2: rank-1 forms are fine
    const Field& f3 = Field::get(3, 1);
    QuadForm r1(f3, 2);
    r1.at(0, 0) = 1;
    CHECK_NOTHROW(make_code(make_form_set(f3, 2, std::vector<QuadForm>{QuadForm(f3, 2), r1})));
}

TEST_CASE("distance enumerators: theory equals brute force", "[rmcodes]") {
    const Field& f2 = Field::get(2, 1);

    // Y = {0}: the enumerator of R_q(1,m)* itself
    auto zero_set = make_form_set(f2, 3, std::vector<QuadForm>{QuadForm(f2, 3)});
    CHECK(dist_enum_theory(zero_set) == rm1_star_enum(3, f2));

    // Y = quad_oo(3,3,2): C(Y) is all of F_2^7
    auto y3 = quad_dcode_odd_odd(3, 3, f2);
    WeightEnumerator th3 = dist_enum_theory(y3);
    long binom[8] = {1, 7, 21, 35, 35, 21, 7, 1};
    for (int w = 0; w <= 7; ++w) REQUIRE(th3.at(std::uint64_t(w)) == binom[w]);
    CHECK(th3 == dist_enum_brute(make_code(y3)));

    // additive constructions across kinds and fields
    for (auto [p, m, d] : std::vector<std::array<int, 3>>{{2, 5, 3}, {3, 3, 3}, {2, 4, 2}}) {
        const Field& f = Field::get(p, 1);
        QuadSet y = (m % 2 && d % 2) ? quad_dcode_odd_odd(m, d, f)
                                     : quad_dcode_even_even(m, d, f);
        auto c = make_code(y);
        REQUIRE(dist_enum_brute(c) == dist_enum_theory(y));
    }

    // a non-additive set takes the pairwise-census path
    const Field& f3 = Field::get(3, 1);
    QuadForm q1(f3, 2);
    q1.at(0, 1) = 1;
    auto ynon = make_form_set(f3, 2, std::vector<QuadForm>{QuadForm(f3, 2), q1});
    REQUIRE_FALSE(is_additive(ynon));
    auto cnon = make_code(ynon);
    WeightEnumerator brute = dist_enum_brute(cnon, 1 << 16);
    WeightEnumerator theory = dist_enum_theory(ynon);
    CHECK(brute == theory);
}

TEST_CASE("headline code parameters", "[rmcodes]") {
    const Field& f2 = Field::get(2, 1);
    auto y = quad_dcode_odd_odd(5, 5, f2);
    auto c = make_code(y);
    REQUIRE(c.length == 31);
    REQUIRE(c.size == 2048);
    WeightEnumerator brute = dist_enum_brute(c);
    WeightEnumerator theory = dist_enum_theory(y);
    REQUIRE(brute == theory);
    CHECK(min_distance(c) == 11);
    CHECK(designed_distance(5, 2, 2) == 11);

    // all occurring weights come from the omega tables of the classes present
    std::set<std::uint64_t> allowed{0};
    for (const auto& [i, a] : inner_dist(y).v)
        for (const auto& [w, n] : omega(i, 5, 2).counts) allowed.insert(w);
    for (const auto& [w, n] : brute.counts) REQUIRE(allowed.count(w) == 1);
}

TEST_CASE("designed distances", "[rmcodes]") {
    CHECK(designed_distance(5, 2, 2) == 11);
    CHECK(designed_distance(3, 2, 1) == 1);
    CHECK(designed_distance(4, 3, 2) == 50);
    CHECK_THROWS_AS(designed_distance(3, 2, 2), error);

    // m=3, q=2, delta=1: C(Y) is the full space F_2^7, min distance 1
    const Field& f2 = Field::get(2, 1);
    auto c = make_code(quad_dcode_odd_odd(3, 3, f2));
    (void)c;
    CHECK(min_distance(make_code(quad_dcode_odd_odd(3, 3, f2))) == designed_distance(3, 2, 1));
}
