#include <catch2/catch_amalgamated.hpp>

#include "latcone/linalg.hpp"
#include "oracles.hpp"

using namespace latcone;

namespace {

// The published 6x4 example matrix used across the suite.
IntMatrix reference_matrix() {
    return IntMatrix::from_rows<long long>({{1, 0, 0, 0},
                                            {0, 1, 0, 0},
                                            {1, 8, 4, 11},
                                            {1, 4, 3, 6},
                                            {-1, -7, -3, -10},
                                            {-1, -7, -2, -9}});
}

} // namespace

TEST_CASE("determinant basics") {
    CHECK(determinant(IntMatrix::identity(3)) == 1);
    CHECK(determinant(IntMatrix::from_rows<long long>({{2, 0}, {0, 4}})) == 8);
    // rows 2,3,5,6 (1-based) of the reference matrix annihilate a nonzero vector
    IntMatrix sub = reference_matrix().select_rows({1, 2, 4, 5});
    CHECK(determinant(sub) == 0);
    CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), input_error);
}

TEST_CASE("determinant agrees with cofactor expansion up to 5x5") {
    oracles::Rng rng(101);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t n = 1 + static_cast<std::size_t>(rng.range(0, 4));
        IntMatrix m = oracles::random_matrix(rng, n, n, -6, 6);
        CHECK(determinant(m) == oracles::det_cofactor(m));
    }
}

TEST_CASE("adjugate") {
    CHECK(adjugate(IntMatrix::identity(2)) == IntMatrix::identity(2));

    IntMatrix m = IntMatrix::from_rows<long long>({{0, 1}, {2, -1}});
    IntMatrix expected = IntMatrix::from_rows<long long>({{-1, -1}, {-2, 0}});
    CHECK(adjugate(m) == oracles::adjugate_cofactor(m));
    CHECK(adjugate(m) == expected);

    oracles::Rng rng(17);
    for (int iter = 0; iter < 30; ++iter) {
        IntMatrix a = oracles::random_matrix(rng, 3, 3, -5, 5);
        IntMatrix prod = adjugate(a) * a;
        Int d = determinant(a);
        IntMatrix want(3, 3);
        for (std::size_t i = 0; i < 3; ++i) want(i, i) = d;
        CHECK(prod == want);
    }
    CHECK_THROWS_AS(adjugate(IntMatrix(2, 3)), input_error);
}

TEST_CASE("hermite normal form") {
    auto idres = hermite_normal_form(IntMatrix::identity(3));
    CHECK(idres.h == IntMatrix::identity(3));
    CHECK(idres.u == IntMatrix::identity(3));

    IntMatrix m = IntMatrix::from_rows<long long>({{2, 6}, {0, 3}});
    auto res = hermite_normal_form(m);
    CHECK(res.h == m * res.u);
    CHECK(abs(determinant(res.u)) == 1);
    // column-style echelon: nothing to the upper right of the pivots
    CHECK(res.h(0, 1) == 0);
    CHECK(res.h(0, 0) > 0);
    CHECK(res.h(1, 1) > 0);

    // a rank-3 row set of the reference matrix: 4th column of h must vanish
    IntMatrix sub = reference_matrix().select_rows({1, 2, 5});
    auto block = hermite_normal_form(sub);
    CHECK(block.h == sub * block.u);
    CHECK(abs(determinant(block.u)) == 1);
    CHECK(rank(sub) == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(block.h(i, 3) == 0);
}

TEST_CASE("hermite normal form reconstruction on random input") {
    oracles::Rng rng(23);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t r = 1 + static_cast<std::size_t>(rng.range(0, 3));
        std::size_t c = 1 + static_cast<std::size_t>(rng.range(0, 4));
        IntMatrix m = oracles::random_matrix(rng, r, c, -7, 7);
        auto res = hermite_normal_form(m);
        CHECK(res.h == m * res.u);
        CHECK(abs(determinant(res.u)) == 1);
    }
}

TEST_CASE("smith normal form") {
    auto idres = smith_normal_form(IntMatrix::identity(4));
    CHECK(idres.d == IntMatrix::identity(4));

    // gcd of entries is 1, gcd of 2x2 minors is 6
    IntMatrix m = IntMatrix::from_rows<long long>({{2, 0}, {0, 3}});
    auto res = smith_normal_form(m);
    CHECK(res.d(0, 0) == 1);
    CHECK(res.d(1, 1) == 6);
    CHECK(res.u * m * res.v == res.d);
    CHECK(oracles::gcd_k_minors(m, 1) == 1);
    CHECK(oracles::gcd_k_minors(m, 2) == 6);

    // diagonal products reproduce gcds of k x k minors
    oracles::Rng rng(71);
    for (int iter = 0; iter < 25; ++iter) {
        std::size_t r = 1 + static_cast<std::size_t>(rng.range(0, 4));
        std::size_t c = 1 + static_cast<std::size_t>(rng.range(0, 5));
        IntMatrix a = oracles::random_matrix(rng, r, c, -5, 5);
        auto s = smith_normal_form(a);
        CHECK(s.u * a * s.v == s.d);
        CHECK(abs(determinant(s.u)) == 1);
        CHECK(abs(determinant(s.v)) == 1);
        Int prod(1);
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
            Int dk = s.d(k - 1, k - 1);
            if (k > 1) CHECK((dk == 0 || dk % s.d(k - 2, k - 2) == 0));
            prod *= dk;
            CHECK(abs(prod) == oracles::gcd_k_minors(a, k));
        }
    }
}

TEST_CASE("smith normal form of the reference transpose matches minor gcd") {
    IntMatrix a = reference_matrix();
    auto s = smith_normal_form(a.transposed());
    Int prod(1);
    for (std::size_t i = 0; i < 4; ++i) prod *= s.d(i, i);
    CHECK(abs(prod) == minor_stats(a).gcd_minors);
}

TEST_CASE("minor stats") {
    // -I_n stacked with the all-ones row: the dimension-scaled simplex matrix
    for (std::size_t n : {2u, 3u, 4u}) {
        IntMatrix a(n + 1, n);
        for (std::size_t i = 0; i < n; ++i) a(i, i) = -1;
        for (std::size_t j = 0; j < n; ++j) a(n, j) = 1;
        auto st = minor_stats(a);
        CHECK(st.delta_max == 1);
        CHECK(st.rank == n);
    }

    IntMatrix sg = IntMatrix::from_rows<long long>({{2, 0}, {0, 4}, {-2, -4}});
    auto st = minor_stats(sg);
    CHECK(st.delta_max == 8);
    CHECK(st.gcd_minors == 8);
    CHECK(st.delta_min == 8);

    CHECK_THROWS_AS(minor_stats(IntMatrix(2, 3)), input_error);
}

TEST_CASE("minor stats of the reference matrix against direct enumeration") {
    IntMatrix a = reference_matrix();
    auto st = minor_stats(a);

    Int mx(0), mn(0), g(0);
    for (const auto& rows : subsets_of_size(6, 4)) {
        Int d = abs(oracles::det_cofactor(a.select_rows(rows)));
        if (d > mx) mx = d;
        if (d != 0 && (mn == 0 || d < mn)) mn = d;
        g = gcd(g, d);
    }
    CHECK(st.delta_max == mx);
    CHECK(st.delta_min == mn);
    CHECK(st.gcd_minors == g);
    CHECK(st.rank == 4);
    CHECK(st.gcd_minors != 0);
    CHECK(st.delta_min % st.gcd_minors == 0);
    CHECK(st.delta_max % st.gcd_minors == 0);
}

TEST_CASE("minor stats divisibility on random matrices") {
    oracles::Rng rng(5);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.range(0, 1));
        std::size_t m = n + static_cast<std::size_t>(rng.range(0, 3));
        IntMatrix a = oracles::random_matrix(rng, m, n, -4, 4);
        auto st = minor_stats(a);
        if (st.gcd_minors != 0) {
            CHECK(st.delta_min % st.gcd_minors == 0);
            CHECK(st.delta_max % st.gcd_minors == 0);
        }
        CHECK((st.rank == n) == (st.delta_min >= 1));
    }
}

TEST_CASE("kernel vector of a one-deficient system") {
    IntMatrix m = IntMatrix::from_rows<long long>({{2, -1}});
    IntVec v = kernel_vector(m);
    CHECK(!is_zero_vec(v));
    CHECK(is_zero_vec(m * v));

    oracles::Rng rng(9);
    for (int iter = 0; iter < 30; ++iter) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.range(0, 3));
        IntMatrix a = oracles::random_matrix(rng, n - 1, n, -5, 5);
        IntVec k = kernel_vector(a);
        CHECK(is_zero_vec(a * k));
        if (rank(a) == n - 1) CHECK(!is_zero_vec(k));
    }
}

TEST_CASE("rational solve and inverse") {
    IntMatrix a = IntMatrix::from_rows<long long>({{0, 1}, {2, -1}});
    auto inv = inverse(to_rational(a));
    REQUIRE(inv.has_value());
    RatVec b{Rat(1), Rat(1)};
    auto x = solve_full_rank(a, b);
    REQUIRE(x.has_value());
    CHECK(dot(a.row(0), *x) == b[0]);
    CHECK(dot(a.row(1), *x) == b[1]);

    // inconsistent overdetermined system
    IntMatrix over = IntMatrix::from_rows<long long>({{1, 0}, {0, 1}, {1, 1}});
    RatVec bad{Rat(0), Rat(0), Rat(5)};
    CHECK(!solve_full_rank(over, bad).has_value());

    CHECK(!inverse(to_rational(IntMatrix::from_rows<long long>({{1, 2}, {2, 4}}))).has_value());
}
