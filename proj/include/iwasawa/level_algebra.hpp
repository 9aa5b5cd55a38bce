#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "iwasawa/group.hpp"
#include "iwasawa/groupring.hpp"

namespace iwasawa {

// Everything over one level group at one coefficient precision: the big ring, the
// conjugacy module, a ring for every U_P^ab and every pair carrier, and the maps between them.
// Trace ideals and transfer tables are built lazily and cached.
class LevelAlgebra {
public:
    using Elem = GroupRing::Elem;
    using Tuple = std::vector<Elem>;  // indexed by subgroup

    LevelAlgebra(std::shared_ptr<const SubgroupLattice> lattice, int precision);
    LevelAlgebra with_precision(int m) const { return LevelAlgebra(lattice_, m); }

    const SubgroupLattice& lattice() const { return *lattice_; }
    std::shared_ptr<const SubgroupLattice> lattice_ptr() const { return lattice_; }
    const LevelGroup& level() const { return lattice_->level(); }
    u64 p() const { return level().p(); }
    int precision() const { return R_.m(); }
    const Zmod& coeffs() const { return R_; }

    const GroupRing& ring() const { return big_; }
    const ConjModule& conj() const { return conj_; }
    const GroupRing& sub_ring(int P) const { return subs_[P]; }
    const GroupRing& pair_ring(int small, int big) const;
    const PairDatum& pair(int small, int big) const;
    int group_order() const { return lattice_->level().quotient().size(); }

    // pi: U_P^ab -> Q
    Elem project(int small, int big, const Elem& x_small) const;
    // nr and tr: U_P'^ab -> Q, through the inclusion of Q into U_P'^ab
    Elem norm(int small, int big, const Elem& x_big, const std::vector<int>* coset_reps = nullptr) const;
    Elem trace(int small, int big, const Elem& x_big) const;
    // the image of Q inside U_P'^ab and the inverse of the inclusion on it
    std::vector<int> included_subgroup(int small, int big) const;

    // conjugation by g (level-group element) carrying U_P^ab to U_{gPg^-1}^ab
    Elem conjugate(int P, int g_level, const Elem& x) const;

    // transfer-induced ring map U_P'^ab -> U_P^ab for [P' : P] = p
    Elem ver(int small, int big, const Elem& x_big) const;
    const std::vector<int>& ver_table(int small, int big) const;
    // g -> g^p from U_src^ab into U_dst^ab (src cyclic, or any src whose p-th powers land in U_dst)
    Elem phi(int src, int dst, const Elem& x) const;
    // keep only elements mapping to generators of the cyclic P (on U_P or on a pair carrier)
    Elem eta(int P, const Elem& x) const;
    Elem eta_on_pair(int small, int big, const Elem& x) const;
    // alpha_P: x^p / N(x) for nontrivial cyclic P, x^p otherwise
    Elem alpha(int P, const Elem& x) const;
    // carrier elements of U_{P^p} inside U_P (P cyclic)
    std::vector<int> kernel_of_character(int P) const;

    // T_{P,P'} scaled by p^k (P normal in P'), and T_P = T_{P, N_G P}
    const TraceIdeal& trace_ideal(int small, int big, int p_power = 0) const;
    const TraceIdeal& weyl_trace_ideal(int P, int p_power = 0) const;
    int normalizer_index(int P) const;

    // class projection of an element of U_P^ab (P cyclic, so U_P is abelian) to the conjugacy module
    std::vector<int> sub_to_conj(int P) const;

private:
    std::shared_ptr<const SubgroupLattice> lattice_;
    Zmod R_;
    GroupRing big_;
    ConjModule conj_;
    std::vector<GroupRing> subs_;
    mutable std::map<std::pair<int, int>, GroupRing> pair_rings_;
    mutable std::map<std::pair<int, int>, std::vector<int>> ver_tables_;
    mutable std::map<std::tuple<int, int, int>, std::shared_ptr<const TraceIdeal>> ideals_;
};

}  // namespace iwasawa
