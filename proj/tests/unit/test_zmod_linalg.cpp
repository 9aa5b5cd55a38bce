#include <doctest.h>

#include <random>

#include "iwasawa/linalg.hpp"

using namespace iwasawa;

TEST_CASE("residue ring inverses") {
    Zmod R(3, 2);
    CHECK(R.inv(1) == 1);
    CHECK(R.inv(2) == 5);
    CHECK_THROWS_AS(R.inv(3), NonUnit);
    for (u64 a = 0; a < R.modulus(); ++a)
        if (R.is_unit(a)) CHECK(R.mul(a, R.inv(a)) == 1);
}

TEST_CASE("residue ring axioms hold exhaustively for small moduli") {
    for (int m = 1; m <= 2; ++m) {
        Zmod R(3, m);
        const u64 q = R.modulus();
        bool ok = true;
        for (u64 a = 0; a < q; ++a)
            for (u64 b = 0; b < q; ++b) {
                ok &= R.add(a, b) == R.add(b, a) && R.mul(a, b) == R.mul(b, a);
                ok &= R.add(a, R.neg(a)) == 0 && R.sub(a, b) == R.add(a, R.neg(b));
                for (u64 c = 0; c < q; ++c) {
                    ok &= R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c));
                    ok &= R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c));
                }
            }
        CHECK(ok);
    }
}

TEST_CASE("valuations and reduction") {
    Zmod R(3, 3);
    CHECK(R.val(0) == 3);
    CHECK(R.val(9) == 2);
    CHECK(R.val(5) == 0);
    CHECK(R.reduce(-1) == 26);
    CHECK(valuation(54, 3) == 3);
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(9));
    CHECK(ipow(3, 4) == 81);
}

TEST_CASE("Teichmueller lifts") {
    Zmod R(3, 3);
    CHECK(teichmuller(R, 1) == 1);
    // 2^(3^k) mod 27: 2, 8, 26, 26, ...
    CHECK(teichmuller(R, 2) == 26);
    for (u64 c = 1; c < 27; ++c) {
        if (!R.is_unit(c)) continue;
        u64 w = teichmuller(R, c);
        CHECK(w % 3 == c % 3);
        CHECK(R.pow(w, 3) == w);
    }
    CHECK_THROWS_AS(teichmuller(R, 3), NonUnit);
}

TEST_CASE("Smith form counts kernel and image") {
    Zmod R(3, 3);
    Matrix A(2, 2);
    A.at(0, 0) = 3;
    A.at(1, 1) = 9;
    SmithForm sf(R, A, true, true);
    CHECK(sf.rank() == 2);
    CHECK(sf.log_kernel_order() == 3);
    CHECK(sf.log_image_order() == 3);
    CHECK(sf.solve({6, 18}).has_value());
    CHECK_FALSE(sf.solve({1, 0}).has_value());
    for (const auto& k : sf.kernel_generators()) CHECK(mat_vec(R, A, k) == std::vector<u64>{0, 0});
}

TEST_CASE("Smith form solve agrees with the matrix on random systems") {
    Zmod R(3, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Matrix A(4, 5);
        for (auto& x : A.a) x = rng() % 9;
        std::vector<u64> x(5);
        for (auto& c : x) c = rng() % 9;
        auto b = mat_vec(R, A, x);
        SmithForm sf(R, A, true, true);
        auto y = sf.solve(b);
        REQUIRE(y.has_value());
        CHECK(mat_vec(R, A, *y) == b);
        CHECK(sf.log_kernel_order() + sf.log_image_order() == 5 * 2);
    }
}

TEST_CASE("unit-pivot solving and determinants") {
    Zmod R(3, 2);
    Matrix A(2, 2);
    A.a = {1, 2, 3, 4};
    CHECK(determinant(R, A) == 7);  // -2 mod 9
    auto x = solve_invertible(R, A, {1, 0});
    CHECK(mat_vec(R, A, x) == std::vector<u64>{1, 0});
    Matrix S(2, 2);
    S.a = {3, 0, 0, 1};
    CHECK_THROWS_AS(determinant(R, S), NonUnit);
}

TEST_CASE("column span membership") {
    Zmod R(3, 2);
    Matrix G(3, 1);
    G.set_column(0, {3, 3, 0});
    ColumnSpan span(R, G);
    CHECK(span.contains({6, 6, 0}));
    CHECK(span.contains({0, 0, 0}));
    CHECK_FALSE(span.contains({3, 0, 0}));
    CHECK(span.log_order() == 1);
    auto c = span.coefficients({6, 6, 0});
    REQUIRE(c.has_value());
    CHECK((*c)[0] * 3 % 9 == 6);
}
