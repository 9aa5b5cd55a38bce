#include <doctest.h>

#include <set>
#include <sstream>

#include "iwasawa/group.hpp"

using namespace iwasawa;

namespace {

std::shared_ptr<const SubgroupLattice> lattice(const std::string& spec, int j) {
    auto L = std::make_shared<const LevelGroup>(parse_group_seed(spec), j);
    return std::make_shared<const SubgroupLattice>(L);
}

// explicit block describing the same data as heisenberg:3
std::string heisenberg_block() {
    std::ostringstream s;
    s << "semidirect\nprime 3\nexponent 1\norder 9\ntable\n";
    for (int x = 0; x < 9; ++x) {
        for (int y = 0; y < 9; ++y) s << ((x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3)) << ' ';
        s << '\n';
    }
    s << "alpha";
    for (int x = 0; x < 9; ++x) s << ' ' << ((x % 3 + x / 3) % 3 + 3 * (x / 3));
    s << "\n";
    return s.str();
}

// subgroups by closing every pair of elements; enough for groups whose subgroups are 2-generated
std::set<std::vector<int>> subgroups_by_pairs(const FiniteGroup& g) {
    std::set<std::vector<int>> out;
    for (int a = 0; a < g.size(); ++a)
        for (int b = a; b < g.size(); ++b) out.insert(g.closure({a, b}));
    return out;
}

}  // namespace

TEST_CASE("degenerate and direct-product seeds") {
    LevelGroup t(parse_group_seed("trivial:3"), 1);
    CHECK(t.group().size() == 3);
    CHECK(t.quotient().size() == 1);

    LevelGroup c(parse_group_seed("cyclic:3"), 2);
    CHECK(c.group().size() == 27);
    CHECK(c.group().is_abelian());
    CHECK(c.center_part().size() == 9);
    int cube_roots = 0, max_order = 0;
    for (int x = 0; x < 27; ++x) {
        if (c.group().pow(x, 3) == 0) ++cube_roots;
        max_order = std::max(max_order, c.group().order_of(x));
    }
    CHECK(cube_roots == 9);  // C3 x C9
    CHECK(max_order == 9);
}

TEST_CASE("Heisenberg seed at level one") {
    LevelGroup L(parse_group_seed("heisenberg:3"), 1);
    const FiniteGroup& g = L.group();
    CHECK(g.size() == 81);
    CHECK(L.quotient().size() == 27);
    CHECK(g.verify_axioms());
    for (int z : L.center_part())
        for (int x = 0; x < g.size(); ++x) CHECK(g.mul(z, x) == g.mul(x, z));
    // commutators have trivial gamma-component, so they meet Z_j trivially
    std::set<int> zj(L.center_part().begin(), L.center_part().end());
    for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y) {
            int c = g.commutator(x, y);
            if (zj.count(c)) CHECK(c == 0);
        }
    CHECK(L.quotient().conjugacy_classes().size() == 11);  // p^2 + p - 1
}

TEST_CASE("explicit semidirect block matches the family") {
    GroupSeed s = parse_group_seed(heisenberg_block());
    LevelGroup a(s, 1), b(parse_group_seed("heisenberg:3"), 1);
    CHECK(a.group().size() == b.group().size());
    CHECK(a.quotient().conjugacy_classes().size() == b.quotient().conjugacy_classes().size());
    CHECK(a.group().conjugacy_classes().size() == b.group().conjugacy_classes().size());
}

TEST_CASE("seed errors") {
    CHECK_THROWS_AS(parse_group_seed("cyclic:2"), InvalidArgument);
    CHECK_THROWS_AS(parse_group_seed("cyclic:6"), ParseError);
    CHECK_THROWS_AS(parse_group_seed("dihedral:3"), ParseError);
    CHECK_THROWS_AS(parse_group_seed(""), ParseError);
    // alpha of order 3 with e = 0 does not act trivially on Gamma^{p^e}
    std::string bad = heisenberg_block();
    bad.replace(bad.find("exponent 1"), 10, "exponent 0");
    CHECK_THROWS_AS(parse_group_seed(bad), InvalidArgument);
    try {
        parse_group_seed("semidirect\nprime 3\nexponent 0\norder 3\ntable\n0 1 2\n1 2 x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 7);
        CHECK(e.column == 5);
    }
}

TEST_CASE("level surjections are homomorphisms with kernel of order p") {
    for (const char* spec : {"cyclic:3", "heisenberg:3"}) {
        LevelGroup up(parse_group_seed(spec), 2), down(parse_group_seed(spec), 1);
        int kernel = 0;
        for (int x = 0; x < up.group().size(); ++x) {
            if (up.reduce_to(down, x) == 0) ++kernel;
            for (int y = 0; y < up.group().size(); y += 7)
                CHECK(up.reduce_to(down, up.group().mul(x, y)) ==
                      down.group().mul(up.reduce_to(down, x), up.reduce_to(down, y)));
        }
        CHECK(kernel == 3);
    }
}

TEST_CASE("subgroup enumeration") {
    CHECK(lattice("cyclic:3", 0)->count() == 2);
    auto e = lattice("elem-abelian:3^2", 0);
    CHECK(e->count() == 6);
    int order3 = 0;
    for (const auto& s : e->all()) order3 += s.order() == 3;
    CHECK(order3 == 4);  // (p^2 - 1)/(p - 1) lines

    auto h = lattice("heisenberg:3", 1);
    const FiniteGroup& G = h->level().quotient();
    auto oracle = subgroups_by_pairs(G);
    CHECK(static_cast<int>(oracle.size()) == h->count());
    for (const auto& s : h->all()) CHECK(oracle.count(s.elements) == 1);
    CHECK(h->count() == 19);
    for (const auto& s : h->all()) {
        CHECK(static_cast<int>(s.preimage.size()) == s.order() * 3);
        if (s.cyclic) CHECK(s.ab.group->is_abelian());
        CHECK(static_cast<int>(s.ab.size()) * static_cast<int>(s.ab.kernel.size()) == static_cast<int>(s.preimage.size()));
    }
}

TEST_CASE("conjugacy classes partition the group") {
    auto h = lattice("heisenberg:3", 1);
    for (const FiniteGroup* g : {&h->level().group(), &h->level().quotient()}) {
        auto classes = g->conjugacy_classes();
        size_t total = 0;
        for (const auto& c : classes) {
            total += c.size();
            for (int x : c) CHECK(x >= c.front());
        }
        CHECK(total == static_cast<size_t>(g->size()));
    }
    auto a = lattice("elem-abelian:3^2", 0);
    CHECK(a->level().quotient().conjugacy_classes().size() == 9);
}

TEST_CASE("transfer: two definitions, identity and homomorphism") {
    auto h = lattice("heisenberg:3", 1);
    const FiniteGroup& amb = h->level().group();
    for (int big = 0; big < h->count(); ++big)
        for (int small = 0; small < h->count(); ++small) {
            if (!h->contains(big, small)) continue;
            const auto& U = h->at(big).preimage;
            const auto& ab = h->at(small).ab;
            for (size_t i = 0; i < U.size(); i += 5) {
                int g = U[i];
                int t = transfer(amb, U, ab, g);
                CHECK(t == transfer_by_cosets(amb, U, ab, g));
                if (small == big) CHECK(t == ab.project(g));
                int g2 = U[(i * 7 + 3) % U.size()];
                CHECK(transfer(amb, U, ab, amb.mul(g, g2)) ==
                      ab.group->mul(t, transfer(amb, U, ab, g2)));
            }
        }
}

TEST_CASE("abelian index-p transfer is the p-th power") {
    auto c = lattice("cyclic:9", 0);
    const FiniteGroup& amb = c->level().group();
    const auto& U = c->at(c->whole()).preimage;
    int small = -1;
    for (const auto& s : c->all())
        if (s.order() == 3) small = s.index;
    REQUIRE(small >= 0);
    const auto& ab = c->at(small).ab;
    for (int g : U) CHECK(transfer(amb, U, ab, g) == ab.project(amb.pow(g, 3)));
}

TEST_CASE("conjugation carries subgroup data") {
    auto h = lattice("heisenberg:3", 1);
    const LevelGroup& L = h->level();
    for (int P = 0; P < h->count(); ++P)
        for (int g = 0; g < L.quotient().size(); g += 4) {
            int Q = h->conjugate(P, g);
            CHECK(h->at(Q).order() == h->at(P).order());
            CHECK(h->at(Q).cyclic == h->at(P).cyclic);
            auto map = h->conjugation_map(P, L.lift(g));
            std::set<int> image(map.begin(), map.end());
            CHECK(image.size() == static_cast<size_t>(h->at(P).ab.size()));
        }
}
