#include <doctest.h>

#include <random>

#include "iwasawa/coefficients.hpp"

using namespace iwasawa;

TEST_CASE("cyclotomic coefficients") {
    Zmod R(3, 2);
    CyclotomicRing C(R);
    CHECK(C.degree() == 2);
    // t^3 = 1 and 1 + t + t^2 = 0
    CHECK(C.root_power(3) == C.scalar(1));
    CHECK(C.add(C.add(C.scalar(1), C.root_power(1)), C.root_power(2)) == C.zero());
    CHECK(C.evaluate_at_one(C.root_power(2)) == 1);
    CHECK_FALSE(C.is_unit(C.uniformizer()));
    CHECK(C.is_unit(C.add(C.uniformizer(), C.scalar(1))));
    // (1 - t)^2 is 3 times a unit: (1-t)^2 = -3t
    auto u2 = C.mul(C.uniformizer(), C.uniformizer());
    CHECK(u2 == C.mul(C.scalar(R.neg(3)), C.root_power(1)));
    CHECK(C.is_scalar(C.scalar(4)));
    CHECK_FALSE(C.is_scalar(C.root_power(1)));
}

TEST_CASE("unramified coefficients and Frobenius") {
    Zmod R(3, 2);
    REQUIRE(UnramifiedRing::irreducible_mod_p(3, {1, 0}));  // x^2 + 1
    CHECK_FALSE(UnramifiedRing::irreducible_mod_p(3, {2, 0}));  // x^2 + 2 = (x-1)(x+1)
    UnramifiedRing O(R, {1, 0});
    std::mt19937_64 rng(11);
    bool reduces = true;
    for (u64 a0 = 0; a0 < 9; ++a0)
        for (u64 a1 = 0; a1 < 9; ++a1) {
            UnramifiedRing::Elem a{a0, a1};
            auto f = O.frobenius(a);
            auto cube = O.pow(a, 3);
            reduces &= f[0] % 3 == cube[0] % 3 && f[1] % 3 == cube[1] % 3;
            reduces &= O.frobenius(f) == a;  // Frobenius^d = 1 with d = 2
        }
    CHECK(reduces);
    for (int t = 0; t < 50; ++t) {
        UnramifiedRing::Elem a{rng() % 9, rng() % 9}, b{rng() % 9, rng() % 9};
        CHECK(O.frobenius(O.mul(a, b)) == O.mul(O.frobenius(a), O.frobenius(b)));
        CHECK(O.frobenius(O.add(a, b)) == O.add(O.frobenius(a), O.frobenius(b)));
        if (O.is_unit(a)) {
            CHECK(O.mul(a, O.inv(a)) == O.scalar(1));
            auto w = O.teichmuller(a);
            CHECK(O.frobenius(w) == O.pow(w, 3));
        }
    }
}

TEST_CASE("scaled approximants track powers of p") {
    Zmod R(3, 3);
    ScaledApproximant zero(R, {0}, 0);
    zero.exact_divide(5);
    CHECK(zero.payload()[0] == 0);

    ScaledApproximant six(R, {6}, 0);
    six.exact_divide(2);
    CHECK(six.payload()[0] == 3);
    CHECK(six.scale() == 0);

    ScaledApproximant three(R, {3}, 0);
    three.exact_divide(3);
    CHECK(three.payload()[0] == 3);
    CHECK(three.scale() == 1);
    CHECK(three.precision() == 2);
    CHECK(three.is_integral());
    CHECK(three.integral_value(2) == std::vector<u64>{1});
    three.normalize();
    CHECK(three.scale() == 0);
    CHECK(three.ring().m() == 2);
    CHECK(three.payload()[0] == 1);
    CHECK(three.equals(ScaledApproximant(Zmod(3, 2), {1}, 0)));

    ScaledApproximant one(R, {1}, 0);
    one.exact_divide(3);
    CHECK_FALSE(one.is_integral());
    CHECK_THROWS_AS(one.integral_value(1), IntegralityFailure);
    CHECK_THROWS_AS(ScaledApproximant(R, {1}, 0).exact_divide(27), InexactDivision);
}

TEST_CASE("normalization is independent of intermediate scales") {
    Zmod R(3, 5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        u64 x = rng() % 243, y = rng() % 243;
        ScaledApproximant a(R, {x * 3 % 243}, 0), b(R, {y * 9 % 243}, 0);
        a.exact_divide(3);
        b.exact_divide(9);
        ScaledApproximant s1 = a;
        s1 += b;
        ScaledApproximant direct(R, {(x + y) % 243}, 0);
        CHECK(s1.normalize().equals(direct));
    }
}

TEST_CASE("rational helpers") {
    CHECK(padic_valuation(Rational(9, 2), 3) == 2);
    CHECK(padic_valuation(Rational(2, 27), 3) == -3);
    CHECK(is_p_integral(Rational(5, 4), 3));
    CHECK_FALSE(is_p_integral(Rational(1, 3), 3));
    CHECK(reduce_mod_prime_power(Rational(1, 2), 3, 2) == 5);
    CHECK(reduce_mod_prime_power(Rational(-1), 3, 2) == 8);
    CHECK_THROWS_AS(reduce_mod_prime_power(Rational(1, 3), 3, 2), NonIntegral);
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
}
