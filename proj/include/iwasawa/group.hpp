#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/zmod.hpp"

namespace iwasawa {

// Hard size limits; enumeration and dense group rings are quadratic in these.
inline constexpr int kMaxQuotientOrder = 243;
inline constexpr int kMaxLevelGroupOrder = 2187;

// A finite group given by its multiplication table.  Element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup() = default;
    FiniteGroup(int order, std::vector<int> table);

    int size() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int a, i64 k) const;
    // g x g^{-1}
    int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
    int commutator(int a, int b) const { return mul(mul(a, b), mul(inv_[a], inv_[b])); }
    int order_of(int a) const;
    bool is_abelian() const;

    // smallest subgroup containing gens, as a sorted element list
    std::vector<int> closure(const std::vector<int>& gens) const;
    bool is_subgroup(const std::vector<int>& sorted_elems) const;
    // subgroup generated by commutators of elements of the given subgroup
    std::vector<int> commutator_subgroup(const std::vector<int>& sub) const;
    // classes sorted by least element; each class sorted
    std::vector<std::vector<int>> conjugacy_classes() const;
    // exhaustive check of associativity, identity and inverses
    bool verify_axioms() const;

private:
    int n_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
};

// Seed data: a finite p-group H with an automorphism alpha such that alpha^{p^e} = 1.
struct GroupSeed {
    std::string name;
    u64 p = 3;
    int e = 0;
    int h_order = 1;
    std::vector<int> h_table;  // h_order x h_order, identity at index 0
    std::vector<int> alpha;    // permutation of H
};

// Parses `trivial:p`, `cyclic:p^n`, `gamma:p^e`, `elem-abelian:p^k`, `heisenberg:p`,
// or a multi-line `semidirect` block.  Throws ParseError / InvalidArgument.
GroupSeed parse_group_seed(const std::string& text);
void validate_seed(const GroupSeed& seed);

// A quotient A/N of a subgroup A of some ambient group, with N normal in A.
// Classes are numbered by the order of their least ambient representative, so class 0 is N itself.
struct Subquotient {
    std::vector<int> members;   // A, sorted ambient indices
    std::vector<int> kernel;    // N, sorted ambient indices
    std::vector<int> class_of;  // ambient index -> class, or -1 outside A
    std::vector<int> rep;       // class -> least ambient representative
    std::shared_ptr<const FiniteGroup> group;

    int size() const { return static_cast<int>(rep.size()); }
    bool contains(int ambient) const { return class_of[ambient] >= 0; }
    int project(int ambient) const { return class_of[ambient]; }
};

Subquotient make_subquotient(const FiniteGroup& ambient, const std::vector<int>& members,
                             const std::vector<int>& kernel);

// The level-j group H x|_alpha Z/p^{e+j} together with its central subgroup Z_j of order p^j
// and the quotient G of order |H| p^e.  The lift of the generator of Gamma is (1, 1).
class LevelGroup {
public:
    LevelGroup(GroupSeed seed, int j);

    const GroupSeed& seed() const { return seed_; }
    int level() const { return j_; }
    u64 p() const { return seed_.p; }
    u64 gamma_order() const { return gamma_mod_; }  // p^{e+j}

    const FiniteGroup& group() const { return *big_; }
    std::shared_ptr<const FiniteGroup> group_ptr() const { return big_; }
    const FiniteGroup& quotient() const { return *quot_; }
    std::shared_ptr<const FiniteGroup> quotient_ptr() const { return quot_; }

    int element(int h, u64 a) const { return h * static_cast<int>(gamma_mod_) + static_cast<int>(a % gamma_mod_); }
    std::pair<int, u64> coords(int x) const { return {x / static_cast<int>(gamma_mod_), x % gamma_mod_}; }
    int to_quotient(int x) const { return to_quot_[x]; }
    int lift(int g) const { return lift_[g]; }
    const std::vector<int>& center_part() const { return zj_; }
    // image in the level below, (h, a) -> (h, a mod p^{e+j-1})
    int reduce_to(const LevelGroup& lower, int x) const;

private:
    GroupSeed seed_;
    int j_;
    u64 gamma_mod_;
    std::shared_ptr<const FiniteGroup> big_, quot_;
    std::vector<int> to_quot_, lift_, zj_;
};

// Data attached to one subgroup P of G.
struct SubgroupDatum {
    int index = 0;
    std::vector<int> elements;     // in G, sorted
    bool cyclic = false;
    int generator = 0;             // least generating element if cyclic
    int pth_power = 0;             // index of P^p = {g^p}
    std::vector<int> normalizer;   // N_G P, in G
    std::vector<int> left_cosets;  // least element of each gP, in G
    std::vector<int> preimage;     // U_P in the level group
    Subquotient ab;                // U_P / [U_P, U_P]
    int order() const { return static_cast<int>(elements.size()); }
};

// Data for P <= P' with [P', P'] <= P: the carrier Q = U_P / [U_P', U_P'] and its two maps.
struct PairDatum {
    int small = 0, big = 0;
    int index = 1;               // [P' : P]
    Subquotient carrier;         // Q
    std::vector<int> project;    // U_P^ab class -> Q class
    std::vector<int> include;    // Q class -> U_P'^ab class (injective)
};

class SubgroupLattice {
public:
    explicit SubgroupLattice(std::shared_ptr<const LevelGroup> level);

    const LevelGroup& level() const { return *level_; }
    std::shared_ptr<const LevelGroup> level_ptr() const { return level_; }
    int count() const { return static_cast<int>(subs_.size()); }
    const SubgroupDatum& at(int i) const { return subs_[i]; }
    const std::vector<SubgroupDatum>& all() const { return subs_; }
    int trivial() const { return 0; }
    int whole() const { return count() - 1; }
    int find(const std::vector<int>& sorted_elems) const;  // -1 if absent
    bool contains(int big, int small) const;
    // index of g P g^{-1}, g in G
    int conjugate(int P, int g) const;
    // U_P^ab class -> U_{gPg^-1}^ab class, for g in the level group
    std::vector<int> conjugation_map(int P, int g_level) const;
    std::vector<int> cyclic_subgroups() const;
    // generators of G (a minimal-ish generating set in canonical order)
    const std::vector<int>& generators() const { return gens_; }
    // nullptr unless [P', P'] <= P <= P'
    const PairDatum* pair(int small, int big) const;

private:
    std::shared_ptr<const LevelGroup> level_;
    std::vector<SubgroupDatum> subs_;
    std::map<std::vector<int>, int> lookup_;
    std::vector<int> gens_;
    std::map<std::pair<int, int>, PairDatum> pairs_;
};

// All subgroups of a finite group, each sorted, ordered by (order, elements).
std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& g);

// Transfer from `big` (a subgroup of the ambient group) to small^ab, where `small_ab`
// is the abelianization subquotient of a finite-index subgroup of `big`.
// Computed by the cycle decomposition of g acting on left cosets.
int transfer(const FiniteGroup& ambient, const std::vector<int>& big, const Subquotient& small_ab, int g);
// The same map from the coset-permutation definition g x_i = x_{s(i)} h_i, ver(g) = prod h_i.
int transfer_by_cosets(const FiniteGroup& ambient, const std::vector<int>& big, const Subquotient& small_ab, int g);

// Left coset representatives (least element of each coset xS) of S in the subgroup `big`.
std::vector<int> left_coset_reps(const FiniteGroup& ambient, const std::vector<int>& big, const std::vector<int>& sub);
// Right coset representatives (least element of each coset Sx).
std::vector<int> right_coset_reps(const FiniteGroup& ambient, const std::vector<int>& big, const std::vector<int>& sub);

}  // namespace iwasawa
