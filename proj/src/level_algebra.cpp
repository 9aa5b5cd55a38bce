#include "iwasawa/level_algebra.hpp"

#include <algorithm>

namespace iwasawa {

LevelAlgebra::LevelAlgebra(std::shared_ptr<const SubgroupLattice> lattice, int precision)
    : lattice_(std::move(lattice)),
      R_(lattice_->level().p(), precision),
      big_(lattice_->level().group_ptr(), R_),
      conj_(lattice_->level().group_ptr(), R_) {
    for (const auto& d : lattice_->all()) subs_.emplace_back(d.ab.group, R_);
}

const PairDatum& LevelAlgebra::pair(int small, int big) const {
    const PairDatum* pd = lattice_->pair(small, big);
    if (!pd) throw InvalidArgument("subgroup pair does not satisfy [P',P'] <= P <= P'");
    return *pd;
}

const GroupRing& LevelAlgebra::pair_ring(int small, int big) const {
    auto key = std::make_pair(small, big);
    auto it = pair_rings_.find(key);
    if (it == pair_rings_.end()) it = pair_rings_.emplace(key, GroupRing(pair(small, big).carrier.group, R_)).first;
    return it->second;
}

LevelAlgebra::Elem LevelAlgebra::project(int small, int big, const Elem& x) const {
    return push_forward(sub_ring(small), pair_ring(small, big), x, pair(small, big).project);
}

std::vector<int> LevelAlgebra::included_subgroup(int small, int big) const {
    std::vector<int> s = pair(small, big).include;
    std::sort(s.begin(), s.end());
    return s;
}

LevelAlgebra::Elem LevelAlgebra::norm(int small, int big, const Elem& x, const std::vector<int>* reps) const {
    const PairDatum& pd = pair(small, big);
    std::vector<int> hom(sub_ring(big).size(), -1);
    for (int q = 0; q < pd.carrier.size(); ++q) hom[pd.include[q]] = q;
    return relative_norm(sub_ring(big), included_subgroup(small, big), hom, pair_ring(small, big), x, reps);
}

LevelAlgebra::Elem LevelAlgebra::trace(int small, int big, const Elem& x) const {
    const PairDatum& pd = pair(small, big);
    std::vector<int> hom(sub_ring(big).size(), -1);
    for (int q = 0; q < pd.carrier.size(); ++q) hom[pd.include[q]] = q;
    return relative_trace(sub_ring(big), included_subgroup(small, big), hom, pair_ring(small, big), x);
}

LevelAlgebra::Elem LevelAlgebra::conjugate(int P, int g, const Elem& x) const {
    int Q = lattice_->conjugate(P, level().to_quotient(g));
    return push_forward(sub_ring(P), sub_ring(Q), x, lattice_->conjugation_map(P, g));
}

const std::vector<int>& LevelAlgebra::ver_table(int small, int big) const {
    auto key = std::make_pair(small, big);
    auto it = ver_tables_.find(key);
    if (it != ver_tables_.end()) return it->second;
    if (!lattice_->contains(big, small)) throw InvalidArgument("transfer needs P <= P'");
    const auto& B = level().group();
    const auto& bd = lattice_->at(big);
    const auto& sd = lattice_->at(small);
    std::vector<int> table(bd.ab.size());
    for (int c = 0; c < bd.ab.size(); ++c) table[c] = transfer(B, bd.preimage, sd.ab, bd.ab.rep[c]);
    return ver_tables_.emplace(key, std::move(table)).first->second;
}

LevelAlgebra::Elem LevelAlgebra::ver(int small, int big, const Elem& x) const {
    return push_forward(sub_ring(big), sub_ring(small), x, ver_table(small, big));
}

LevelAlgebra::Elem LevelAlgebra::phi(int src, int dst, const Elem& x) const {
    const auto& B = level().group();
    const auto& s = lattice_->at(src).ab;
    const auto& d = lattice_->at(dst).ab;
    std::vector<int> table(s.size());
    for (int c = 0; c < s.size(); ++c) {
        table[c] = d.project(B.pow(s.rep[c], static_cast<i64>(p())));
        if (table[c] < 0) throw InvalidArgument("p-th powers leave the target carrier");
    }
    return push_forward(sub_ring(src), sub_ring(dst), x, table);
}

LevelAlgebra::Elem LevelAlgebra::eta(int P, const Elem& x) const {
    const auto& d = lattice_->at(P);
    if (!d.cyclic) throw InvalidArgument("eta is defined for cyclic subgroups only");
    const auto& G = level().quotient();
    Elem y = x;
    for (int c = 0; c < d.ab.size(); ++c)
        if (G.order_of(level().to_quotient(d.ab.rep[c])) != d.order()) y[c] = 0;
    return y;
}

LevelAlgebra::Elem LevelAlgebra::eta_on_pair(int small, int big, const Elem& x) const {
    const auto& d = lattice_->at(small);
    if (!d.cyclic) throw InvalidArgument("eta is defined for cyclic subgroups only");
    const auto& pd = pair(small, big);
    const auto& G = level().quotient();
    Elem y = x;
    for (int c = 0; c < pd.carrier.size(); ++c)
        if (G.order_of(level().to_quotient(pd.carrier.rep[c])) != d.order()) y[c] = 0;
    return y;
}

std::vector<int> LevelAlgebra::kernel_of_character(int P) const {
    const auto& d = lattice_->at(P);
    const auto& k = lattice_->at(d.pth_power);
    std::vector<int> out;
    for (int y : k.preimage) out.push_back(d.ab.project(y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LevelAlgebra::Elem LevelAlgebra::alpha(int P, const Elem& x) const {
    const auto& d = lattice_->at(P);
    if (d.cyclic && d.order() > 1) return alpha_twisted(sub_ring(P), kernel_of_character(P), x);
    return sub_ring(P).pow(x, p());
}

const TraceIdeal& LevelAlgebra::trace_ideal(int small, int big, int k) const {
    auto key = std::make_tuple(small, big, k);
    auto it = ideals_.find(key);
    if (it != ideals_.end()) return *it->second;
    if (!lattice_->contains(big, small)) throw InvalidArgument("trace ideal needs P <= P'");
    const auto& G = level().quotient();
    const auto& bd = lattice_->at(big);
    const auto& sd = lattice_->at(small);
    std::vector<std::vector<int>> conj;
    for (int g : left_coset_reps(G, bd.elements, sd.elements)) {
        if (lattice_->conjugate(small, g) != small) throw InvalidArgument("trace ideal needs P normal in P'");
        conj.push_back(lattice_->conjugation_map(small, level().lift(g)));
    }
    auto ideal = std::make_shared<const TraceIdeal>(sub_ring(small), conj, k);
    return *ideals_.emplace(key, std::move(ideal)).first->second;
}

int LevelAlgebra::normalizer_index(int P) const { return lattice_->find(lattice_->at(P).normalizer); }

const TraceIdeal& LevelAlgebra::weyl_trace_ideal(int P, int k) const { return trace_ideal(P, normalizer_index(P), k); }

std::vector<int> LevelAlgebra::sub_to_conj(int P) const {
    const auto& d = lattice_->at(P);
    if (d.ab.kernel.size() != 1) throw InvalidArgument("class projection needs an abelian U_P");
    std::vector<int> out(d.ab.size());
    for (int c = 0; c < d.ab.size(); ++c) out[c] = conj_.class_of(d.ab.rep[c]);
    return out;
}

}  // namespace iwasawa
