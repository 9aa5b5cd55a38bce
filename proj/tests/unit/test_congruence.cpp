#include <doctest.h>

#include <random>

#include "iwasawa/suites.hpp"

using namespace iwasawa;

namespace {

bool all_pass(const std::vector<Verdict>& vs) {
    for (const auto& v : vs)
        if (!v.passed) return false;
    return true;
}

}  // namespace

TEST_CASE("constant tuples satisfy the congruence systems") {
    auto lat = build_lattice("heisenberg:3", 1);
    LevelAlgebra A(lat, 2);
    Tuple ones, zeros;
    for (int P = 0; P < lat->count(); ++P) {
        ones.push_back(A.sub_ring(P).one());
        zeros.push_back(A.sub_ring(P).zero());
    }
    CHECK(all_pass(check_multiplicative(A, ones)));
    CHECK(all_pass(check_additive(A, zeros)));
}

TEST_CASE("images of beta and theta lie in the systems") {
    for (const char* spec : {"cyclic:3", "elem-abelian:3^2", "heisenberg:3"}) {
        auto lat = build_lattice(spec, 1);
        LevelAlgebra A(lat, 2);
        for (int c = 0; c < A.conj().size(); ++c)
            CHECK_MESSAGE(all_pass(check_additive(A, beta(A, A.conj().basis(c)))), spec << " class " << c);
        std::mt19937_64 rng(17);
        for (int s = 0; s < 3; ++s) {
            auto verdicts = check_multiplicative(A, theta(A, random_unit(A.ring(), rng)));
            for (const auto& v : verdicts) CHECK_MESSAGE(v.passed, spec << ": " << v.check << " " << v.detail);
        }
    }
}

TEST_CASE("every negative control is rejected with a witness at the altered subgroup") {
    auto lat = build_lattice("heisenberg:3", 1);
    LevelAlgebra A(lat, 2);
    for (const char* c : {"M1", "M2", "M3", "M4", "A1", "A2", "A3"}) {
        ViolatingTuple vt = make_violating_tuple(A, c, 1);
        CHECK(vt.altered >= 0);
        Verdict v = run_negative_control(A, c, 1);
        CHECK_MESSAGE(v.passed, c << ": " << v.detail);
        CHECK((v.small == vt.altered || v.big == vt.altered));
    }
}

TEST_CASE("additive pairs and residuals") {
    auto lat = build_lattice("elem-abelian:3^2", 0);
    LevelAlgebra A(lat, 2);
    auto pairs = additive_pairs(*lat);
    CHECK_FALSE(pairs.empty());
    Tuple zeros;
    for (int P = 0; P < lat->count(); ++P) zeros.push_back(A.sub_ring(P).zero());
    for (auto [s, b] : pairs) {
        Elem r = additive_pair_residual(A, s, b, zeros);
        for (u64 c : r) CHECK(c == 0);
    }
}

TEST_CASE("additive isomorphism on small configurations") {
    for (const char* spec : {"trivial:3", "cyclic:3", "elem-abelian:3^2"}) {
        for (int j : {0, 1}) {
            auto lat = build_lattice(spec, j);
            AdditiveIsoReport iso = verify_additive_iso(lat, 2);
            CHECK_MESSAGE(iso.passed, spec << " j=" << j);
            CHECK(iso.injective);
            CHECK(iso.log_psi == iso.log_image);
            CHECK(iso.image_contained.passed);
            InverseReport inv = verify_additive_inverse(lat, 2);
            CHECK_MESSAGE(inv.passed, spec << " j=" << j << ": " << inv.delta_beta.detail << inv.beta_delta.detail);
            CHECK(inv.log_generated == inv.log_image);
        }
    }
}

TEST_CASE("the module of solutions is larger than the image before the guard is applied") {
    // over Z/p^m itself the A-system picks up torsion solutions; the guarded count does not
    auto lat = build_lattice("heisenberg:3", 1);
    AdditiveIsoReport iso = verify_additive_iso(lat, 2);
    CHECK(iso.passed);
    CHECK(iso.log_psi_naive >= iso.log_psi);
    CHECK(iso.working_precision == 2 + additive_guard_digits(*lat));
}

TEST_CASE("theta samples") {
    auto lat = build_lattice("cyclic:3", 1);
    ThetaSampleReport empty = verify_theta_samples(lat, 2, 0, 1);
    CHECK(empty.passed);
    CHECK(empty.containment_failures == 0);
    ThetaSampleReport some = verify_theta_samples(lat, 2, 4, 1);
    CHECK_MESSAGE(some.passed, some.first_failure.detail);
    CHECK(some.samples == 4);
}
