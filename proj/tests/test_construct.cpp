#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "formscheme/construct.hpp"

using namespace formscheme;

TEST_CASE("trace coefficient representations", "[construct]") {
    const Tower& t = Tower::get(2, 1, 3);
    auto basis = t.polynomial_basis();

    // zero coefficients give the zero form
    CHECK(trace_quad_to_matrix(TraceQuadCoeffs(t, {0, 0}), basis).is_zero());
    CHECK(trace_sym_to_matrix(TraceSymCoeffs(t, {0, 0}), basis).is_zero());

    // Q = Tr_3(x^3) has rank 3
    QuadForm q3 = trace_quad_to_matrix(TraceQuadCoeffs(t, {0, 1}), basis);
    CHECK(classify(q3) == OrbitIndex::odd(3));

    // S = Tr_3(xy): the Gram matrix is the trace Gram of the basis, rank 3
    SymForm s3 = trace_sym_to_matrix(TraceSymCoeffs(t, {1, 0}), basis);
    CHECK(classify(s3) == OrbitIndex::odd(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            REQUIRE(s3.at(i, j) == t.rel_trace(t.big().mul(basis[std::size_t(i)], basis[std::size_t(j)])));

    CHECK_THROWS_AS(TraceQuadCoeffs(t, {0, 0, 0}), error);  // wrong coefficient count
    // even m: the last coefficient must lie in the half-degree subfield
    const Tower& t4 = Tower::get(2, 1, 4);
    auto mid = t4.subfield_elements(2);
    felem outside = 0;
    for (felem v = 0; v < t4.big().q(); ++v)
        if (std::find(mid.begin(), mid.end(), v) == mid.end()) {
            outside = v;
            break;
        }
    CHECK_THROWS_AS(TraceQuadCoeffs(t4, {0, 0, outside}), error);
    CHECK_NOTHROW(TraceQuadCoeffs(t4, {0, 0, mid[1]}));
}

TEST_CASE("coefficient maps are bijective", "[construct]") {
    for (auto [p, k, m] : std::vector<std::array<int, 3>>{{2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {2, 1, 4}, {2, 1, 2}}) {
        const Tower& t = Tower::get(p, k, m);
        auto basis = t.polynomial_basis();
        std::set<std::vector<felem>> quads, syms;
        std::uint64_t tuples = 0;
        detail::for_each_trace_tuple(t, [&](const std::vector<felem>& v) {
            ++tuples;
            quads.insert(trace_quad_to_matrix(TraceQuadCoeffs(t, v), basis).coeffs());
            syms.insert(trace_sym_to_matrix(TraceSymCoeffs(t, v), basis).coeffs());
        }, 1 << 20);
        BigInt space = form_space_size(m, t.q());
        REQUIRE(BigInt(tuples) == space);
        REQUIRE(BigInt(std::uint64_t(quads.size())) == space);
        REQUIRE(BigInt(std::uint64_t(syms.size())) == space);
    }
}

TEST_CASE("coefficient pairing formula", "[construct]") {
    CHECK(coeff_pairing_check(3, Field::get(2, 1)));
    CHECK(coeff_pairing_check(2, Field::get(3, 1)));
    CHECK(coeff_pairing_check(4, Field::get(2, 1)));
    CHECK(coeff_pairing_check(2, Field::get(2, 2)));
    CHECK(coeff_pairing_check(5, Field::get(2, 1)));  // sampled above the cap
}

TEST_CASE("symmetric d-code construction", "[construct]") {
    const Field& f2 = Field::get(2, 1);
    auto z = sym_dcode(3, 3, f2);
    REQUIRE(z.size() == 8);
    CHECK(is_additive(z));
    for (const auto& s : z.members)
        if (!s.is_zero()) REQUIRE(classify(s).r == 3);

    // m = d: all nonzero members have full rank
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}}) {
        const Field& f = Field::get(p, 1);
        auto full_rank = sym_dcode(m, m, f);
        for (const auto& s : full_rank.members)
            if (!s.is_zero()) REQUIRE(classify(s).r == m);
    }

    auto z42 = sym_dcode(4, 2, f2);
    REQUIRE(z42.size() == 256);
    CHECK(is_d_code(z42, 2));

    CHECK_THROWS_MATCHES(sym_dcode(4, 3, f2), error,
                         Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::parity_mismatch; }));
}

TEST_CASE("odd-odd quadratic d-codes", "[construct]") {
    const Field& f2 = Field::get(2, 1);
    auto y = quad_dcode_odd_odd(3, 3, f2);
    REQUIRE(y.size() == 8);
    CHECK(is_additive(y));
    InnerDist d = inner_dist(y);
    CHECK(d.at(OrbitIndex::odd(3)) == 7);
    CHECK(is_d_code(d, 3));

    auto y55 = quad_dcode_odd_odd(5, 5, f2);
    REQUIRE(y55.size() == 32);
    InnerDist d55 = inner_dist(y55);
    CHECK(is_d_code(d55, 5));
    CHECK(d55 == theoretical_inner_dist(MaxCase::quad_odd_m_odd_d, 5, 2, 5).full);

    // d = 1 is the whole space
    auto y1 = quad_dcode_odd_odd(3, 1, f2);
    CHECK(BigInt(std::uint64_t(y1.size())) == form_space_size(3, 2));

    CHECK_THROWS_AS(quad_dcode_odd_odd(4, 3, f2), error);
}

TEST_CASE("even-even quadratic d-codes", "[construct]") {
    const Field& f2 = Field::get(2, 1);
    auto y44 = quad_dcode_even_even(4, 4, f2);
    REQUIRE(y44.size() == 8);
    CHECK(is_d_code(y44, 4));

    auto y22 = quad_dcode_even_even(2, 2, f2);
    REQUIRE(y22.size() == 2);
    for (const auto& qf : y22.members)
        if (!qf.is_zero()) REQUIRE(classify(qf).r == 2);

    auto y42 = quad_dcode_even_even(4, 2, f2);
    REQUIRE(y42.size() == 64);
    CHECK(is_d_code(y42, 2));

    CHECK_THROWS_MATCHES(quad_dcode_even_even(4, 4, Field::get(3, 1)), error,
                         Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::odd_characteristic; }));
    CHECK_THROWS_AS(quad_dcode_even_even(3, 2, f2), error);
}

TEST_CASE("elliptic d-codes", "[construct]") {
    const Field& f2 = Field::get(2, 1);
    auto y = elliptic_dcode(4, 2, f2);
    REQUIRE(y.size() == 4);
    int elliptic_members = 0;
    for (const auto& qf : y.members)
        if (!qf.is_zero()) {
            REQUIRE(classify(qf) == OrbitIndex::even(4, -1));
            ++elliptic_members;
        }
    CHECK(elliptic_members == 3);
    CHECK(inner_dist(y) == theoretical_inner_dist(MaxCase::elliptic, 4, 2, 4).full);

    auto y2 = elliptic_dcode(2, 1, f2);
    REQUIRE(y2.size() == 2);
    for (const auto& qf : y2.members)
        if (!qf.is_zero()) REQUIRE(classify(qf) == OrbitIndex::even(2, -1));

    auto y41 = elliptic_dcode(4, 1, f2);
    REQUIRE(y41.size() == 64);
    InnerDist d41 = inner_dist(y41);
    CHECK(d41.at(OrbitIndex::even(2, +1)) == 0);  // no hyperbolic rank-2 differences

    CHECK_THROWS_AS(elliptic_dcode(3, 1, f2), error);
}

TEST_CASE("designs from maximal codes", "[construct]") {
    const Field& f2 = Field::get(2, 1);
    const Field& f3 = Field::get(3, 1);
    // maximal odd-d codes are t-designs with t = 2(floor((m+1)/2) - (d-1)/2)
    for (auto [m, d] : std::vector<std::pair<int, int>>{{3, 3}, {5, 3}, {5, 5}, {3, 1}}) {
        int t = 2 * ((m + 1) / 2 - (d - 1) / 2);
        REQUIRE(is_t_design(quad_dcode_odd_odd(m, d, f2), t));
        REQUIRE(is_t_design(quad_dcode_odd_odd(m, d, f3), t));
    }
    for (auto [m, d] : std::vector<std::pair<int, int>>{{3, 3}, {5, 3}}) {
        int t = 2 * ((m + 1) / 2 - (d - 1) / 2);
        REQUIRE(is_t_design(sym_dcode(m, d, f2), t));
    }
    // elliptic codes are (m-d+1)-designs
    for (auto [m, delta] : std::vector<std::pair<int, int>>{{4, 2}, {4, 1}, {2, 1}}) {
        REQUIRE(is_t_design(elliptic_dcode(m, delta, f2), m - 2 * delta + 1));
        REQUIRE(is_t_design(elliptic_dcode(m, delta, f3), m - 2 * delta + 1));
    }
}

TEST_CASE("annihilators of the quadratic codes", "[construct]") {
    // the annihilator of the odd-odd code is a maximal (m-d+3)-code in S(m,q)
    for (auto [p, m, d] : std::vector<std::array<int, 3>>{{2, 3, 3}, {2, 5, 3}, {2, 5, 5}, {3, 3, 3}}) {
        const Field& f = Field::get(p, 1);
        auto y = quad_dcode_odd_odd(m, d, f);
        auto ann = annihilator(y);
        int dd = m - d + 3 <= m ? m - d + 3 : m;  // d = m gives the full-rank code of S
        REQUIRE(is_d_code(ann, dd));
        REQUIRE(BigInt(std::uint64_t(ann.size())) == size_bound(FormKind::symmetric, m, f.q(), dd, BoundVariant::additive));
        REQUIRE(macwilliams_check(y));
    }
}

TEST_CASE("puncturing", "[construct]") {
    const Field& f2 = Field::get(2, 1);
    auto zero_set = make_form_set(f2, 3, std::vector<QuadForm>{QuadForm(f2, 3)});
    auto pz = puncture(zero_set);
    REQUIRE(pz.size() == 1);
    CHECK(pz.members[0].is_zero());
    CHECK(pz.m == 2);

    auto z = sym_dcode(3, 3, f2);
    auto pzs = puncture(z);
    CHECK(pzs.size() <= 8);
    CHECK(is_d_code(pzs, 1));

    // (d+2)-code punctures to a d-code; ranks drop by at most 2
    auto y = quad_dcode_odd_odd(5, 5, f2);
    auto py = puncture(y);
    REQUIRE(py.size() == 32);
    CHECK(is_d_code(py, 3));
    CHECK(BigInt(std::uint64_t(py.size())) == size_bound(FormKind::quadratic, 4, 2, 3, BoundVariant::general));
    CHECK(inner_dist(py) == theoretical_inner_dist(MaxCase::quad_even_m_odd_d, 4, 2, 3).full);

    for (const auto& qf : y.members) {
        auto single = make_form_set(f2, 5, std::vector<QuadForm>{qf});
        auto restricted = puncture(single);
        int drop = classify(qf).r - classify(restricted.members[0]).r;
        REQUIRE(drop >= 0);
        REQUIRE(drop <= 2);
    }

    // a custom hyperplane works too and stays a 3-code
    std::vector<std::vector<felem>> w{{1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 1, 1}};
    auto pw = puncture(y, w);
    CHECK(is_d_code(pw, 3));

    std::vector<std::vector<felem>> bad{{1, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}};
    CHECK_THROWS_MATCHES(puncture(y, bad), error,
                         Catch::Matchers::Predicate<error>([](const error& e) { return e.code() == errc::bad_subspace; }));
}
