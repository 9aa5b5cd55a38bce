#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "iwasawa/k1.hpp"
#include "iwasawa/verdict.hpp"

namespace iwasawa {

// ---- the multiplicative system (tuples of units x_P over U_P^ab)

Verdict check_M1(const LevelAlgebra& A, const Tuple& x);
Verdict check_M2(const LevelAlgebra& A, const Tuple& x);
Verdict check_M3(const LevelAlgebra& A, const Tuple& x);
Verdict check_M4(const LevelAlgebra& A, const Tuple& x);
std::vector<Verdict> check_multiplicative(const LevelAlgebra& A, const Tuple& x);

// ---- the additive system (tuples a_P over U_P^ab)

Verdict check_A1(const LevelAlgebra& A, const Tuple& a);
Verdict check_A2(const LevelAlgebra& A, const Tuple& a);
Verdict check_A3(const LevelAlgebra& A, const Tuple& a);
std::vector<Verdict> check_additive(const LevelAlgebra& A, const Tuple& a);

// Every (P, P') to which the first additive condition applies, in lattice order.
std::vector<std::pair<int, int>> additive_pairs(const SubgroupLattice& lat);
// Residual of the first condition on one pair, in the pair carrier.
Elem additive_pair_residual(const LevelAlgebra& A, int small, int big, const Tuple& a);

// ---- the additive isomorphism as a finite linear-algebra statement
//
// The intended coefficient ring is Z_p, which is torsion free, so the statement is about lattices:
// beta is injective over Z_p and its image is the module cut out by A1-A3.  Solutions of the
// A-system modulo p^W contain p-torsion that does not lift; the module at precision m is
// therefore taken as the reduction mod p^m of the solutions mod p^W, W = m + guard.  That
// reduction always contains the true module mod p^m, so equality of orders with the image of
// beta mod p^m proves the two agree.

// guard digits used above precision m
int additive_guard_digits(const SubgroupLattice& lat);

struct AdditiveIsoReport {
    int precision = 0;
    int working_precision = 0;
    int classes = 0;               // size of the conjugacy module
    int beta_rank = 0;             // invariant factors of beta that are nonzero mod p^W
    int beta_max_exponent = 0;     // largest such exponent
    long log_psi = 0;              // log_p order of the module mod p^m
    long log_image = 0;            // log_p order of the image of beta mod p^m
    long log_psi_naive = 0;        // log_p order of the solutions of A1-A3 over Z/p^m itself
    long log_kernel_naive = 0;     // log_p order of the kernel of beta over Z/p^m itself
    Verdict image_contained;       // beta of every basis class satisfies A1-A3
    bool injective = false;        // over Z_p
    bool passed = false;
};
AdditiveIsoReport verify_additive_iso(std::shared_ptr<const SubgroupLattice> lat, int precision);

// delta o beta on every basis class and beta o delta on a generating set of the additive
// module, both checked modulo p^precision.  The generators are solutions at the working
// precision of verify_additive_iso, which also leaves room for the divisions in delta.
struct InverseReport {
    int precision = 0;
    int working_precision = 0;
    int basis_checked = 0;
    int generators_checked = 0;
    long log_generated = 0;    // log_p order of the span of the reduced generators
    long log_image = 0;        // log_p order of the image of beta mod p^m
    Verdict delta_beta;
    Verdict beta_delta;
    bool passed = false;
};
InverseReport verify_additive_inverse(std::shared_ptr<const SubgroupLattice> lat, int precision);

// Generators of the solutions of A1-A3 at the precision of A.
std::vector<Tuple> additive_module_generators(const LevelAlgebra& A);
// log_p of the order of that solution set
long additive_module_log_order(const LevelAlgebra& A);

// ---- sampled statements about theta

struct ThetaSampleReport {
    int precision = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    int containment_failures = 0;
    int collisions_checked = 0;      // pairs with equal theta (conjugates, swapped products)
    int collision_mismatches = 0;    // such pairs whose integral logs differ
    int torsion_checked = 0;         // torsion units whose logarithmic image must vanish
    int torsion_failures = 0;
    Verdict first_failure;
    bool passed = false;
};
ThetaSampleReport verify_theta_samples(std::shared_ptr<const SubgroupLattice> lat, int precision, int samples,
                                       std::uint64_t seed);

// ---- negative controls

// A tuple violating exactly the named condition in a way the checker must detect, together
// with the subgroup that was altered.  `check` is one of M1..M4, A1..A3.
struct ViolatingTuple {
    std::string check;
    int altered = -1;
    Tuple tuple;
};
ViolatingTuple make_violating_tuple(const LevelAlgebra& A, const std::string& check, std::uint64_t seed);

}  // namespace iwasawa
