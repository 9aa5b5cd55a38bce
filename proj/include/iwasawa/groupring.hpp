#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "iwasawa/coefficients.hpp"
#include "iwasawa/group.hpp"
#include "iwasawa/linalg.hpp"

namespace iwasawa {

// (Z/p^m)[C] for a finite carrier group C, stored densely (one coefficient per element).
class GroupRing {
public:
    using Elem = std::vector<u64>;

    GroupRing() = default;
    GroupRing(std::shared_ptr<const FiniteGroup> g, const Zmod& R) : g_(std::move(g)), R_(R) {}

    const FiniteGroup& group() const { return *g_; }
    std::shared_ptr<const FiniteGroup> group_ptr() const { return g_; }
    const Zmod& coeffs() const { return R_; }
    int size() const { return g_->size(); }
    // same carrier, different precision
    GroupRing with_precision(int m) const { return GroupRing(g_, Zmod(R_.p(), m)); }

    Elem zero() const { return Elem(size(), 0); }
    Elem one() const { return basis(0); }
    Elem basis(int g, u64 c = 1) const;
    Elem scalar(u64 c) const { return basis(0, c); }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem scale(const Elem& a, u64 c) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, u64 e) const;
    // g a g^{-1}
    Elem conjugate(const Elem& a, int g) const;
    u64 augment(const Elem& a) const;
    bool is_unit(const Elem& a) const { return R_.is_unit(augment(a)); }
    // solves a * y = 1 with unit pivots; throws NonUnit
    Elem invert_unit(const Elem& a) const;
    // residues reduced (or canonically lifted) to another precision
    Elem change_precision(const Elem& a, const GroupRing& target) const;
    bool equal_mod(const Elem& a, const Elem& b, int digits) const;

private:
    std::shared_ptr<const FiniteGroup> g_;
    Zmod R_;
};

// Linear extension of a map on carriers: image[g] is the target element (or -1 to drop g).
GroupRing::Elem push_forward(const GroupRing& src, const GroupRing& dst, const GroupRing::Elem& x,
                             const std::vector<int>& image);

// Square matrix with entries in a commutative group ring.
struct RingMatrix {
    int n = 0;
    std::vector<GroupRing::Elem> entries;
    GroupRing::Elem& at(int r, int c) { return entries[static_cast<size_t>(r) * n + c]; }
    const GroupRing::Elem& at(int r, int c) const { return entries[static_cast<size_t>(r) * n + c]; }
};

// Right multiplication by x on the ambient group ring, viewed as a left module over the subgroup
// ring with basis the given right coset representatives (U c_i).  Entries are pushed to the
// commutative target ring through `hom` (ambient index -> target index, defined on the subgroup).
RingMatrix right_multiplication_matrix(const GroupRing& ambient, const std::vector<int>& sub,
                                       const std::vector<int>& coset_reps, const std::vector<int>& hom,
                                       const GroupRing& target, const GroupRing::Elem& x);
// Determinant by elimination with unit pivots over the local ring; throws NonUnit.
GroupRing::Elem determinant(const GroupRing& ring, RingMatrix M);
// Division-free determinant (Berkowitz); slower, used as a cross-check.
GroupRing::Elem determinant_division_free(const GroupRing& ring, const RingMatrix& M);
GroupRing::Elem matrix_trace(const GroupRing& ring, const RingMatrix& M);

// Norm and trace from an ambient ring down to a subgroup, landing in the commutative `target`
// through `hom`.  `coset_reps` defaults to the least element of each right coset.
GroupRing::Elem relative_norm(const GroupRing& ambient, const std::vector<int>& sub, const std::vector<int>& hom,
                              const GroupRing& target, const GroupRing::Elem& x,
                              const std::vector<int>* coset_reps = nullptr);
GroupRing::Elem relative_trace(const GroupRing& ambient, const std::vector<int>& sub, const std::vector<int>& hom,
                               const GroupRing& target, const GroupRing::Elem& x);

// (Z/p^m)[Conj(C)]: coefficients on conjugacy classes, classes ordered by least element.
class ConjModule {
public:
    using Elem = std::vector<u64>;
    ConjModule() = default;
    ConjModule(std::shared_ptr<const FiniteGroup> g, const Zmod& R);

    const FiniteGroup& group() const { return *g_; }
    const Zmod& coeffs() const { return R_; }
    int size() const { return static_cast<int>(classes_.size()); }
    int class_of(int g) const { return class_of_[g]; }
    int rep(int c) const { return classes_[c].front(); }
    const std::vector<int>& members(int c) const { return classes_[c]; }
    ConjModule with_precision(int m) const;

    Elem zero() const { return Elem(size(), 0); }
    Elem basis(int c, u64 v = 1) const;
    // class projection R[C] -> R[Conj(C)]
    Elem project(const GroupRing::Elem& x) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    // [g] -> [g^p] (trivial Frobenius on coefficients)
    Elem phi(const Elem& a) const;

private:
    std::shared_ptr<const FiniteGroup> g_;
    Zmod R_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
};

// Group ring over (Z/p^m)[mu_p], used for the character-twist description of norms.
class CyclotomicGroupRing {
public:
    using Elem = std::vector<CyclotomicRing::Elem>;
    CyclotomicGroupRing(std::shared_ptr<const FiniteGroup> g, const Zmod& R) : g_(std::move(g)), C_(R) {}
    const CyclotomicRing& coeffs() const { return C_; }
    Elem embed(const GroupRing::Elem& x) const;
    // sum_g x_g zeta^{k chi(g)} g, for chi: C -> Z/p given as a table
    Elem twist(const GroupRing::Elem& x, const std::vector<int>& chi, int k) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem one() const;
    // the element as an ordinary group-ring element, if all coefficients are scalars
    std::optional<GroupRing::Elem> descend(const Elem& a) const;

private:
    std::shared_ptr<const FiniteGroup> g_;
    CyclotomicRing C_;
};

// A character chi: A -> Z/p with kernel exactly the index-p subgroup S of the abelian carrier A.
// The canonical choice sends the least element outside S to 1.
std::vector<int> index_p_character(const FiniteGroup& A, const std::vector<int>& sub, u64 p);
// prod_{k=0}^{p-1} chi^k(x) for an index-p step S <= A of an abelian carrier.
CyclotomicGroupRing::Elem omega_product(const GroupRing& ring, const std::vector<int>& chi, const GroupRing::Elem& x);

// x -> x^p / N(x), N the norm from U_P to U_{P^p} included back; `kernel` lists the carrier
// elements of U_{P^p}.  For P trivial or non-cyclic the caller uses x^p instead.
GroupRing::Elem alpha_twisted(const GroupRing& ring, const std::vector<int>& kernel, const GroupRing::Elem& x);

// The image of x -> sum_i g_i x g_i^{-1} (conjugation maps given as class tables), optionally
// scaled by a power of p, with a linear-algebra membership oracle.
class TraceIdeal {
public:
    TraceIdeal(const GroupRing& ring, const std::vector<std::vector<int>>& conjugations, int p_power = 0);
    const std::vector<GroupRing::Elem>& generators() const { return gens_; }
    bool contains(const GroupRing::Elem& x) const { return span_.contains(x); }
    std::optional<std::vector<u64>> certificate(const GroupRing::Elem& x) const { return span_.coefficients(x); }
    GroupRing::Elem apply(const GroupRing::Elem& x) const;  // the trace map itself (unscaled)
    long log_order() const { return span_.log_order(); }

private:
    static Matrix build(const GroupRing& ring, const std::vector<std::vector<int>>& conj, int p_power,
                        std::vector<GroupRing::Elem>& gens);
    GroupRing ring_;
    std::vector<std::vector<int>> conj_;
    std::vector<GroupRing::Elem> gens_;
    ColumnSpan span_;
};

}  // namespace iwasawa
