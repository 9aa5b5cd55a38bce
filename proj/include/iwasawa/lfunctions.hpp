#pragma once

#include <string>
#include <vector>

#include "iwasawa/coefficients.hpp"
#include "iwasawa/verdict.hpp"

namespace iwasawa {

// ---- Bernoulli data

Rational bernoulli_number(int k);
Rational bernoulli_poly(int k, const Rational& x);

// ---- the cyclotomic field Q(zeta_n), power basis modulo the n-th cyclotomic polynomial

class CyclotomicField {
public:
    using Elem = std::vector<Rational>;

    explicit CyclotomicField(u64 n);
    u64 order() const { return n_; }
    int degree() const { return static_cast<int>(poly_.size()) - 1; }

    Elem zero() const { return Elem(degree()); }
    Elem scalar(const Rational& q) const;
    Elem root(i64 e) const;  // zeta_n^e
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const Rational& q) const;
    bool is_rational(const Elem& a) const;
    // coefficientwise reduction to Z/p^k; equality of reductions is equality in Z[zeta_n]/p^k
    std::vector<u64> reduce(const Elem& a, u64 p, int k) const;

private:
    Elem reduce_poly(std::vector<Rational> v) const;
    u64 n_;
    std::vector<Rational> poly_;  // monic, low degree first
};

// ---- ray classes over Q: (Z/M)^x / {+-1} with M = F p^{j+1}

struct RayClassLevel {
    u64 p = 3;
    u64 conductor = 1;  // F, prime to p
    int level = 0;      // j
    u64 modulus = 3;    // F p^{j+1}
    std::vector<u64> classes;  // representatives r <= M - r, coprime to M, increasing
    std::vector<int> index;    // residue -> class index, -1 when not coprime

    static RayClassLevel make(u64 p, u64 conductor, int level);
    int class_of(i64 n) const;
    int size() const { return static_cast<int>(classes.size()); }
};

// A Dirichlet character mod M with values zeta_n^{exponent[a]}; exponent[a] = -1 off the units.
struct DirichletCharacter {
    u64 modulus = 1;
    u64 order = 1;      // n, the exponent of the unit group
    std::vector<int> exponent;
    u64 conductor = 1;
    bool even = true;
};
// All characters of (Z/M)^x, built from generators of the prime-power factors.
std::vector<DirichletCharacter> dirichlet_characters(u64 M);

// ---- instances

struct ZetaInstance {
    RayClassLevel level;
    std::vector<u64> sigma;  // sorted primes, containing p and the primes of F
    int u_power = 1;         // u acts through kappa(u) = (1+p)^u_power and trivially mod F
    int f_kappa = 1;

    static ZetaInstance make(u64 p, u64 conductor, int level, std::vector<u64> sigma = {}, int u_power = 1);
    ZetaInstance at_level(int j) const;
    int precision() const { return f_kappa + level.level; }
    // exact kappa(u) and the residue of u mod M
    Rational kappa_u() const;
    u64 u_residue() const;
};

std::vector<u64> prime_factors(u64 n);

// sum over n > 0, n = a mod M, of n^{k-1}: M^{k-1} (-B_k(<a/M>) / k) with <a/M> in (0, 1]
Rational one_sided_class_sum(u64 a, u64 M, int k);
// sum over n > 0, n = +-a mod M, n prime to sigma, of n^{k-1} (the value at s = 1-k)
Rational partial_zeta(u64 a, u64 M, const std::vector<u64>& sigma, int k);
// Same value by refining the modulus to M times the extra primes; an independent formula.
Rational partial_zeta_refined(u64 a, u64 M, const std::vector<u64>& sigma, int k);

using LocallyConstant = std::vector<Rational>;  // indexed by ray class
LocallyConstant class_indicator(const RayClassLevel& L, int cls);

Rational L_sigma(const ZetaInstance& inst, const LocallyConstant& eps, int k);
// L(eps, 1-k) - kappa(u)^k L(eps_u, 1-k), eps_u(x) = eps(u x)
Rational delta_u(const ZetaInstance& inst, const LocallyConstant& eps, int k);

// L_Sigma(psi, 1-k) from generalized Bernoulli numbers of the primitive character
CyclotomicField::Elem L_sigma_character(const ZetaInstance& inst, const DirichletCharacter& psi,
                                        const CyclotomicField& K, int k);

// sum_x Delta^u(delta_x, 1-k) kappa(x)^{-k} x with coefficients mod p^{f+j}, indexed by class
std::vector<u64> rw_approximant(const ZetaInstance& inst, int k);
// the exact values Delta^u(delta_x, 1-k), indexed by class
std::vector<Rational> delta_values(const ZetaInstance& inst, int k);

// ---- checks

// image of the level-j approximant under A_j -> A_{j-1} equals the level-(j-1) approximant
Verdict check_inverse_system(const ZetaInstance& inst, int k);
Verdict check_k_independence(const ZetaInstance& inst, int k, int k2);
// every even character: psi kappa^k applied to the approximant equals (1 - psi kappa^k(u)) L_Sigma(psi, 1-k)
Verdict check_interpolation(const ZetaInstance& inst, int k);
// The |G| = 1 congruence: Delta^{u^p}(delta_y, 1-k) over the degree-p layer against
// Delta^u(delta_y o phi, 1-pk) over Q, mod p, for every class y of the layer at level j.
Verdict check_abelian_congruence(const ZetaInstance& inst, int k);

// Partial zeta of the degree-p subfield of the cyclotomic Z_p-tower at the class of y, where y is
// a class at level j+1 of Q whose (p-1)-th power is 1 mod p^2.  Computed from the abelian
// factorization into Dirichlet L-values.
Rational layer_partial_zeta(const ZetaInstance& inst, u64 y, int k);

// ---- imported Delta-tables

struct DeltaTable {
    u64 conductor = 1;
    u64 p = 3;
    int level = 0;
    std::vector<u64> sigma;
    u64 u = 1;  // residue of u mod F p^{j+1}
    struct Record {
        u64 cls;
        int k;
        Rational value;
    };
    std::vector<Record> records;
};
DeltaTable parse_delta_table(const std::string& text);
std::string format_delta_table(const DeltaTable& t);
DeltaTable delta_table_from_instance(const ZetaInstance& inst, const std::vector<int>& ks);
Verdict check_k_independence_table(const DeltaTable& t, int k, int k2);

}  // namespace iwasawa
