#include <doctest.h>

#include <random>

#include "iwasawa/lfunctions.hpp"

using namespace iwasawa;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("Bernoulli numbers and polynomials") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == q(-1, 2));
    CHECK(bernoulli_number(2) == q(1, 6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(12) == q(-691, 2730));
    CHECK(bernoulli_poly(2, q(0)) == q(1, 6));
    CHECK(bernoulli_poly(2, q(1, 2)) == q(-1, 12));
    for (int k = 1; k <= 8; ++k)
        for (Rational x : {q(1, 3), q(2, 7), q(5, 11)}) {
            Rational sign = (k % 2 == 0) ? q(1) : q(-1);
            CHECK(bernoulli_poly(k, 1 - x) == sign * bernoulli_poly(k, x));
        }
}

TEST_CASE("cyclotomic field arithmetic") {
    CyclotomicField K(6);
    CHECK(K.degree() == 2);
    // zeta_6^3 = -1 and zeta_6^6 = 1
    CHECK(K.root(3) == K.scalar(-1));
    CHECK(K.root(6) == K.scalar(1));
    CHECK(K.mul(K.root(2), K.root(5)) == K.root(1));
    CHECK(K.is_rational(K.add(K.root(1), K.root(-1))));
}

TEST_CASE("partial zeta values") {
    CHECK(one_sided_class_sum(1, 4, 2) == q(1, 24));
    CHECK(partial_zeta(1, 1, {3}, 2) == q(1, 6));
    CHECK(partial_zeta(1, 4, {2}, 2) == q(1, 12));
    CHECK(partial_zeta(2, 15, {3, 5, 7}, 4) == q(28749, 10));
    // order and repetition of Sigma do not matter
    CHECK(partial_zeta(2, 15, {7, 5, 3, 7}, 4) == partial_zeta(2, 15, {3, 5, 7}, 4));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const u64 M = 3 + rng() % 60;
        u64 a = 1 + rng() % (M - 1);
        while (std::gcd(a, M) != 1) a = 1 + rng() % (M - 1);
        const int k = 2 * (1 + static_cast<int>(rng() % 3));
        std::vector<u64> sigma = prime_factors(M);
        for (u64 extra : {2, 7, 11})
            if (rng() % 2) sigma.push_back(extra);
        CHECK(partial_zeta(a, M, sigma, k) == partial_zeta_refined(a, M, sigma, k));
    }
}

TEST_CASE("ray classes and characters") {
    RayClassLevel L = RayClassLevel::make(3, 5, 1);
    CHECK(L.modulus == 45);
    CHECK(L.size() == 12);
    CHECK(L.class_of(44) == L.class_of(1));
    CHECK(L.class_of(3) == -1);
    auto chars = dirichlet_characters(45);
    CHECK(chars.size() == 24);
    int trivial = 0;
    for (const auto& c : chars) trivial += c.conductor == 1;
    CHECK(trivial == 1);
    CHECK(prime_factors(360) == std::vector<u64>{2, 3, 5});
}

TEST_CASE("Delta at modulus 45") {
    ZetaInstance inst = ZetaInstance::make(3, 5, 1);
    CHECK(inst.u_residue() == 31);
    CHECK(inst.kappa_u() == 4);
    CHECK(inst.sigma == std::vector<u64>{3, 5});
    const std::vector<long> expected = {900379,  419539,   1226267, 1360851, -747973, -1249325,
                                        1021115, -1535469, 584379,  -1475045, 31507,  -563629};
    auto values = delta_values(inst, 4);
    REQUIRE(values.size() == expected.size());
    for (size_t i = 0; i < values.size(); ++i) CHECK(values[i] == q(expected[i], 4));
    for (int c = 0; c < inst.level.size(); ++c)
        CHECK(delta_u(inst, class_indicator(inst.level, c), 4) == values[c]);
}

TEST_CASE("L of an indicator is the partial zeta value") {
    ZetaInstance inst = ZetaInstance::make(3, 5, 1, {7});
    for (int c = 0; c < inst.level.size(); ++c)
        CHECK(L_sigma(inst, class_indicator(inst.level, c), 4) ==
              partial_zeta(inst.level.classes[c], 45, {3, 5, 7}, 4));
}

TEST_CASE("trivial u gives zero Delta") {
    ZetaInstance inst = ZetaInstance::make(3, 5, 0, {}, 0);
    CHECK(inst.kappa_u() == 1);
    for (const auto& v : delta_values(inst, 4)) CHECK(v == 0);
}

TEST_CASE("single-class approximant over Q at level 0") {
    // M = 3 has the single class {1, 2}; Delta = (1 - 4^k) zeta_{3}(1 mod 3, 1-k)
    ZetaInstance inst = ZetaInstance::make(3, 1, 0);
    CHECK(inst.level.size() == 1);
    auto values = delta_values(inst, 2);
    CHECK(values[0] == (1 - 16) * partial_zeta(1, 3, {3}, 2));
    auto approx = rw_approximant(inst, 2);
    REQUIRE(approx.size() == 1);
    CHECK(approx[0] == reduce_mod_prime_power(values[0], 3, inst.precision()));
}

TEST_CASE("partial zeta of the degree-p layer") {
    ZetaInstance inst = ZetaInstance::make(3, 7, 0);
    CHECK(layer_partial_zeta(inst, 1, 2) == q(-6046, 3));
    CHECK(layer_partial_zeta(inst, 8, 2) == q(1922, 3));
    CHECK(layer_partial_zeta(inst, 10, 2) == q(3242, 3));
    CHECK(layer_partial_zeta(inst, 1, 4) == q(708504813329L, 15));
}

TEST_CASE("the zeta checks pass") {
    for (u64 F : {1, 5}) {
        for (int j : {0, 1}) {
            ZetaInstance inst = ZetaInstance::make(3, F, j);
            for (int k : {4, 16}) {
                Verdict v = check_interpolation(inst, k);
                CHECK_MESSAGE(v.passed, "F=" << F << " j=" << j << " k=" << k << ": " << v.detail);
                Verdict a = check_abelian_congruence(inst, k);
                CHECK_MESSAGE(a.passed, a.detail);
                if (j >= 1) CHECK(check_inverse_system(inst, k).passed);
            }
            CHECK(check_k_independence(inst, 4, 16).passed);
            CHECK(check_k_independence(inst, 4, 4).passed);
        }
    }
}

TEST_CASE("Delta-table round trip and validation") {
    ZetaInstance inst = ZetaInstance::make(3, 5, 1);
    DeltaTable t = delta_table_from_instance(inst, {4, 16});
    std::string text = format_delta_table(t);
    DeltaTable back = parse_delta_table(text);
    CHECK(format_delta_table(back) == text);
    CHECK(back.records.size() == 24);
    CHECK(check_k_independence_table(back, 4, 16).passed);

    const std::string header = "F_cond 5\np 3\nj 1\nSigma 3 5\nu 31\n";
    auto parse_error_at = [](const std::string& s, int line, int column) {
        try {
            parse_delta_table(s);
        } catch (const ParseError& e) {
            CHECK(e.line == line);
            CHECK(e.column == column);
            return;
        }
        FAIL("no parse error");
    };
    parse_error_at(header + "(3, 4, 1, 1)\n", 6, 2);    // 3 is not a unit mod 45
    parse_error_at(header + "(1, 3, 1, 1)\n", 6, 5);    // odd k
    parse_error_at(header + "(1, 4, 1, 0)\n", 6, 11);   // zero denominator
    parse_error_at("(1, 4, 1, 1)\n", 1, 1);             // record before the header
    parse_error_at("p 3\np 3\n", 2, 1);                 // repeated key
    parse_error_at(header + "(1, 4, 1, 1)\n(1, 4, 2, 1)\n", 7, 2);
    CHECK_THROWS_AS(parse_delta_table(header + "(1, 4, 1, 3)\n"), NonIntegral);
    CHECK_NOTHROW(parse_delta_table(header + "# comment\n(1, 4, 1, 2)  # trailing comment\n"));
}
