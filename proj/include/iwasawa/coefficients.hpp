#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "iwasawa/zmod.hpp"

namespace iwasawa {

// (Z/p^m)[t]/(1 + t + ... + t^{p-1}); t plays the role of a primitive p-th root of unity.
class CyclotomicRing {
public:
    explicit CyclotomicRing(const Zmod& base) : R_(base), d_(static_cast<int>(base.p()) - 1) {}
    using Elem = std::vector<u64>;  // d coefficients, power basis 1, t, ..., t^{d-1}

    const Zmod& base() const { return R_; }
    int degree() const { return d_; }
    Elem zero() const { return Elem(d_, 0); }
    Elem scalar(u64 c) const;
    Elem root_power(long k) const;  // t^k
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    // t -> 1, landing in Z/p^{m}... modulo p, since 1 + ... + 1 = p there
    u64 evaluate_at_one(const Elem& a) const;
    bool is_scalar(const Elem& a) const;
    bool is_unit(const Elem& a) const;  // unit iff the image in F_p is nonzero
    // image of 1 - t; generates the maximal ideal over Z_p[mu_p]
    Elem uniformizer() const { return sub(scalar(1), root_power(1)); }

private:
    // reduce a polynomial of arbitrary degree modulo the cyclotomic polynomial
    Elem reduce(std::vector<u64> poly) const;
    Zmod R_;
    int d_;
};

// Galois ring (Z/p^m)[x]/(f) with f monic and irreducible mod p, plus its Frobenius.
class UnramifiedRing {
public:
    using Elem = std::vector<u64>;
    // f given by coefficients f_0..f_{d-1} of the monic polynomial x^d + f_{d-1}x^{d-1} + ... + f_0
    UnramifiedRing(const Zmod& base, std::vector<u64> lower_coeffs);

    const Zmod& base() const { return R_; }
    int degree() const { return d_; }
    Elem zero() const { return Elem(d_, 0); }
    Elem scalar(u64 c) const;
    Elem generator() const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, u64 e) const;
    bool is_unit(const Elem& a) const;
    Elem inv(const Elem& a) const;
    // the unique ring automorphism lifting y -> y^p
    Elem frobenius(const Elem& a) const;
    const Elem& frobenius_root() const { return frob_root_; }
    Elem teichmuller(const Elem& a) const;
    static bool irreducible_mod_p(u64 p, const std::vector<u64>& lower_coeffs);

private:
    Elem reduce(std::vector<u64> poly) const;
    Elem eval_poly(const std::vector<u64>& coeffs, const Elem& at) const;
    Zmod R_;
    int d_;
    std::vector<u64> f_;  // lower coefficients
    Elem frob_root_;
};

// A module element divided by p^scale.  The payload lives mod p^W; the represented value is known
// mod p^{W - scale}.  Equality compares cross-scaled payloads at the common precision.
class ScaledApproximant {
public:
    ScaledApproximant() = default;
    ScaledApproximant(const Zmod& R, std::vector<u64> payload, int scale = 0);

    const Zmod& ring() const { return R_; }
    int scale() const { return scale_; }
    const std::vector<u64>& payload() const { return payload_; }
    size_t size() const { return payload_.size(); }
    // p-adic digits of the represented value that are determined
    int precision() const { return R_.m() - scale_; }

    bool is_integral() const;
    // value as a residue vector mod p^prec; throws IntegralityFailure if not integral
    std::vector<u64> integral_value(int prec) const;
    std::vector<u64> integral_value() const { return integral_value(precision()); }

    ScaledApproximant& operator+=(const ScaledApproximant& o);
    ScaledApproximant& operator-=(const ScaledApproximant& o);
    ScaledApproximant& scale_by(i64 c);
    // division by n: the prime-to-p part is inverted, the p-part raises the scale
    ScaledApproximant& exact_divide(i64 n);
    // strip common factors of p from payload and scale (loses no information)
    ScaledApproximant& normalize();
    // equality of the represented values at precision min(precision(), o.precision(), prec)
    bool equals(const ScaledApproximant& o, int prec = 1 << 20) const;

private:
    void lift_scale(int s);  // re-express with a larger scale
    Zmod R_;
    int scale_ = 0;
    std::vector<u64> payload_;
};

// Exact rationals (GMP) with p-adic helpers.
using Rational = mpq_class;

int padic_valuation(const Rational& q, u64 p);  // large sentinel for 0
bool is_p_integral(const Rational& q, u64 p);
// q mod p^k for p-integral q; throws NonIntegral otherwise
u64 reduce_mod_prime_power(const Rational& q, u64 p, int k);
Rational rational_pow(const Rational& q, unsigned e);
std::string to_string(const Rational& q);

}  // namespace iwasawa
