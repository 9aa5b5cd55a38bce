#include <doctest.h>

#include <numeric>
#include <random>

#include "iwasawa/suites.hpp"

using namespace iwasawa;

namespace {

int find_subgroup_of_order(const SubgroupLattice& lat, int order, bool cyclic) {
    for (const auto& s : lat.all())
        if (s.order() == order && s.cyclic == cyclic) return s.index;
    return -1;
}

}  // namespace

TEST_CASE("group ring basics") {
    auto lat = build_lattice("heisenberg:3", 1);
    LevelAlgebra A(lat, 2);
    const GroupRing& R = A.ring();
    const FiniteGroup& g = R.group();
    for (int x = 0; x < g.size(); x += 5) CHECK(R.mul(R.basis(x), R.basis(g.inv(x))) == R.one());
    std::mt19937_64 rng(2);
    for (int t = 0; t < 5; ++t) {
        Elem x = random_unit(R, rng), y = random_unit(R, rng);
        CHECK(R.augment(R.mul(x, y)) == R.coeffs().mul(R.augment(x), R.augment(y)));
        for (int z : lat->level().center_part()) CHECK(R.conjugate(x, z) == x);
        int h = static_cast<int>(rng() % g.size());
        CHECK(R.conjugate(R.mul(x, y), h) == R.mul(R.conjugate(x, h), R.conjugate(y, h)));
        CHECK(R.mul(x, R.invert_unit(x)) == R.one());
        // the class projection kills commutators
        CHECK(A.conj().project(R.sub(R.mul(x, y), R.mul(y, x))) == A.conj().zero());
    }
}

TEST_CASE("inverse of 1 - p h") {
    auto lat = build_lattice("cyclic:3", 1);
    LevelAlgebra A(lat, 2);
    const GroupRing& R = A.ring();
    CHECK(R.invert_unit(R.one()) == R.one());
    for (int h = 1; h < R.size(); ++h) {
        Elem x = R.sub(R.one(), R.basis(h, 3));
        CHECK(R.invert_unit(x) == R.add(R.one(), R.basis(h, 3)));
    }
    CHECK_THROWS_AS(R.invert_unit(R.basis(1, 3)), NonUnit);
}

TEST_CASE("trace, norm and projection on an abelian step") {
    auto lat = build_lattice("elem-abelian:3^2", 0);
    LevelAlgebra A(lat, 2);
    const int big = lat->whole();
    const int small = find_subgroup_of_order(*lat, 3, true);
    REQUIRE(small >= 0);
    const PairDatum& pd = A.pair(small, big);
    const GroupRing& Rb = A.sub_ring(big);
    const GroupRing& Rq = A.pair_ring(small, big);
    std::vector<int> back(Rb.size(), -1);
    for (int c = 0; c < Rq.size(); ++c) back[pd.include[c]] = c;
    for (int h = 0; h < Rb.size(); ++h) {
        Elem tr = A.trace(small, big, Rb.basis(h));
        if (back[h] >= 0) CHECK(tr == Rq.basis(back[h], 3));
        else CHECK(tr == Rq.zero());
    }
    // a central scalar has norm r^p and trace p r
    CHECK(A.norm(small, big, Rb.scalar(2)) == Rq.scalar(8));
    CHECK(A.trace(small, big, Rb.scalar(2)) == Rq.scalar(6));
}

TEST_CASE("norm of 1 + g down an index-p cyclic step") {
    auto lat = build_lattice("cyclic:9", 0);
    LevelAlgebra A(lat, 3);
    const int big = lat->whole();
    const int small = find_subgroup_of_order(*lat, 3, true);
    const PairDatum& pd = A.pair(small, big);
    const GroupRing& Rb = A.sub_ring(big);
    const GroupRing& Rq = A.pair_ring(small, big);
    const FiniteGroup& C = Rb.group();
    for (int g = 0; g < C.size(); ++g) {
        if (C.order_of(g) != 9) continue;
        int gp = C.pow(g, 3);
        int q = -1;
        for (int c = 0; c < Rq.size(); ++c)
            if (pd.include[c] == gp) q = c;
        REQUIRE(q >= 0);
        CHECK(A.norm(small, big, Rb.add(Rb.one(), Rb.basis(g))) == Rq.add(Rq.one(), Rq.basis(q)));
    }
}

TEST_CASE("determinant by elimination agrees with the division-free determinant") {
    auto lat = build_lattice("heisenberg:3", 1);
    LevelAlgebra A(lat, 2);
    const LevelGroup& L = lat->level();
    std::vector<int> all(L.group().size());
    std::iota(all.begin(), all.end(), 0);
    std::mt19937_64 rng(9);
    for (int P : {find_subgroup_of_order(*lat, 3, true), find_subgroup_of_order(*lat, 9, false)}) {
        REQUIRE(P >= 0);
        const auto& sd = lat->at(P);
        auto reps = right_coset_reps(L.group(), all, sd.preimage);
        Elem x = random_unit(A.ring(), rng);
        RingMatrix M = right_multiplication_matrix(A.ring(), sd.preimage, reps, sd.ab.class_of, A.sub_ring(P), x);
        CHECK(determinant(A.sub_ring(P), M) == determinant_division_free(A.sub_ring(P), M));
    }
}

TEST_CASE("transfer-induced maps and the p-power map") {
    auto lat = build_lattice("heisenberg:3", 1);
    LevelAlgebra A(lat, 2);
    std::mt19937_64 rng(4);
    int pairs = 0;
    for (int big = 0; big < lat->count(); ++big)
        for (int small = 0; small < lat->count(); ++small) {
            if (small == big || !lat->contains(big, small) || !lat->pair(small, big)) continue;
            if (A.pair(small, big).index != 3) continue;
            const GroupRing& Rb = A.sub_ring(big);
            const GroupRing& Rs = A.sub_ring(small);
            Elem x = random_unit(Rb, rng), y = random_unit(Rb, rng);
            CHECK(A.ver(small, big, Rb.mul(x, y)) == Rs.mul(A.ver(small, big, x), A.ver(small, big, y)));
            ++pairs;
        }
    CHECK(pairs > 0);

    // phi on Z_j: z -> z^p has kernel of order p, and fixes scalars
    const GroupRing& R1 = A.sub_ring(0);
    int kernel = 0;
    for (int z = 0; z < R1.size(); ++z) kernel += A.phi(0, 0, R1.basis(z)) == R1.one();
    CHECK(kernel == 3);
    CHECK(A.phi(0, 0, R1.scalar(5)) == R1.scalar(5));
}

TEST_CASE("alpha on scalars and on the trivial subgroup") {
    auto lat = build_lattice("heisenberg:3", 1);
    LevelAlgebra A(lat, 2);
    std::mt19937_64 rng(8);
    for (int P : lat->cyclic_subgroups()) {
        const GroupRing& R = A.sub_ring(P);
        if (P != 0) CHECK(A.alpha(P, R.scalar(2)) == R.one());
        Elem x = random_unit(R, rng);
        if (P == 0) CHECK(A.alpha(P, x) == R.pow(x, 3));
    }
}

TEST_CASE("trace ideals") {
    auto lat = build_lattice("elem-abelian:3^2", 0);
    LevelAlgebra A(lat, 2);
    const int big = lat->whole();
    const int small = find_subgroup_of_order(*lat, 3, true);
    const TraceIdeal& T = A.trace_ideal(small, big);
    const GroupRing& Rq = A.pair_ring(small, big);
    // trivial conjugation action: T is [P':P] times the ring
    CHECK(T.contains(Rq.zero()));
    for (int g = 0; g < Rq.size(); ++g) {
        CHECK(T.contains(Rq.basis(g, 3)));
        CHECK_FALSE(T.contains(Rq.basis(g, 1)));
    }
    auto h = build_lattice("heisenberg:3", 1);
    LevelAlgebra B(h, 2);
    std::mt19937_64 rng(6);
    for (int P : h->cyclic_subgroups()) {
        const TraceIdeal& W = B.weyl_trace_ideal(P);
        Elem x(B.sub_ring(P).size());
        for (auto& c : x) c = rng() % 9;
        auto image = W.apply(x);
        CHECK(W.contains(image));
        auto cert = W.certificate(image);
        CHECK(cert.has_value());
    }
}

TEST_CASE("determinant norm and the product of character twists agree") {
    for (const char* spec : {"cyclic:3", "elem-abelian:3^2", "cyclic:9", "heisenberg:3"}) {
        auto lat = build_lattice(spec, 0);
        SampledVerdict v = check_norm_consistency(lat, 2, 5, 1);
        CHECK_MESSAGE(v.verdict.passed, spec << ": " << v.verdict.detail);
        CHECK(v.checked > 0);
    }
}
