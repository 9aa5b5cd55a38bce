#pragma once

#include <vector>

#include "iwasawa/coefficients.hpp"
#include "iwasawa/level_algebra.hpp"

namespace iwasawa {

using Elem = GroupRing::Elem;
using Tuple = LevelAlgebra::Tuple;

// ---- multiplicative side

// Norm from the level group ring down to U_P followed by abelianization, computed as the
// determinant of right multiplication on the right-coset basis (default: least representatives).
Elem theta_P(const LevelAlgebra& A, int P, const Elem& x, const std::vector<int>* coset_reps = nullptr);
Tuple theta(const LevelAlgebra& A, const Elem& x);

// ---- additive side

Elem t_map(const LevelAlgebra& A, int P, const ConjModule::Elem& a);
Elem beta_P(const LevelAlgebra& A, int P, const ConjModule::Elem& a);
Tuple beta(const LevelAlgebra& A, const ConjModule::Elem& a);
// sum over cyclic P of [a_P] / [G:P], as an approximant over the conjugacy module
ScaledApproximant delta(const LevelAlgebra& A, const Tuple& t);

// ---- logarithms

// least N with Jbar^N = 0, Jbar the augmentation ideal of F_p[C]
int radical_nilpotency_index(const FiniteGroup& C, u64 p);
// number of terms after which every further term of log(1 + v), v in J, is divisible by p^W
int log_series_length(int nilpotency, u64 p, int W);

// log(1 + v) for v in the radical, projected to the conjugacy module, with all 1/n tracked as scale
ScaledApproximant log_one_plus(const GroupRing& ring, const ConjModule& conj, const Elem& v, int nilpotency);
// log(1 + z) for z in p * ring; the result lies in p * ring and is exact at the ring precision
Elem log_p_ideal(const GroupRing& ring, const Elem& one_plus_z);
// exp(y) for y in p * ring; exact at the ring precision
Elem exp_p_ideal(const GroupRing& ring, const Elem& y);

// L(x) = log x - (phi/p) log x on the conjugacy module, via
//   L(1 - v) = - sum_{p !| i} [v^i]/i - sum_k ([v^{pk}] - phi[v^k]) / (pk)
// after removing the Teichmueller scalar of the augmentation.  Every division by pk is checked
// to be exact (IntegralityFailure otherwise).  The result has scale 0; its ring records the
// number of digits that are determined.
ScaledApproximant integral_log(const LevelAlgebra& A, const Elem& x);
// Same value through L(x) = L(y^{p^r}) / p^r with y^{p^r} = 1 mod p; an independent formula.
ScaledApproximant integral_log_by_powers(const LevelAlgebra& A, const Elem& x);
// digits of the integral-log series result at working precision W
int integral_log_output_precision(const LevelAlgebra& A, int W);
// least working precision W whose series result has at least `digits` determined digits
int integral_log_working_precision(const LevelAlgebra& A, int digits);

// sum a_g [g] -> prod g^{a_g} in the abelianized level group; returns the class index
int omega_to_ab(const LevelAlgebra& A, const ScaledApproximant& a);

// ---- the maps u, v and the logarithmic map on tuples

Elem u_map(const LevelAlgebra& A, int P, const Tuple& x);
// v_P with rational weights, as an approximant over U_P^ab
ScaledApproximant v_map(const LevelAlgebra& A, int P, const Tuple& a);
Tuple alpha_tuple(const LevelAlgebra& A, const Tuple& x);

// Divide every coefficient by p^k exactly; IntegralityFailure if some coefficient is not divisible.
Elem divide_by_p_power(const Zmod& R, const Elem& x, int k);

struct LogTuple {
    Tuple values;
    int precision = 0;  // digits determined in every component
};
// The logarithmic map from multiplicative tuples to additive tuples.  The ring of A is the
// working precision; the output is reduced to a common precision.
LogTuple calL(const LevelAlgebra& A, const Tuple& x);
// (1/p) log(x_G^p / phi(x_G)) on the abelianized level group
ScaledApproximant calL_top_closed_form(const LevelAlgebra& A, const Elem& x_top);

// Random unit of the level group ring, canonical (reduced) coefficients, augmentation a unit.
template <class Rng>
Elem random_unit(const GroupRing& ring, Rng& rng) {
    const u64 q = ring.coeffs().modulus();
    Elem x(ring.size());
    for (auto& c : x) c = rng() % q;
    while (!ring.is_unit(x)) x[0] = ring.coeffs().add(x[0], 1);
    return x;
}

}  // namespace iwasawa
