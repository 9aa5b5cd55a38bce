#include "iwasawa/coefficients.hpp"

#include <algorithm>

namespace iwasawa {

// ---------------------------------------------------------------- cyclotomic

CyclotomicRing::Elem CyclotomicRing::scalar(u64 c) const {
    Elem e(d_, 0);
    e[0] = c % R_.modulus();
    return e;
}

CyclotomicRing::Elem CyclotomicRing::reduce(std::vector<u64> poly) const {
    // first fold t^p = 1, then eliminate t^{p-1} = -(1 + ... + t^{p-2})
    const int p = d_ + 1;
    std::vector<u64> folded(p, 0);
    for (size_t i = 0; i < poly.size(); ++i) folded[i % p] = R_.add(folded[i % p], poly[i]);
    Elem out(d_, 0);
    u64 top = folded[d_];
    for (int i = 0; i < d_; ++i) out[i] = R_.sub(folded[i], top);
    return out;
}

CyclotomicRing::Elem CyclotomicRing::root_power(long k) const {
    const long p = d_ + 1;
    long r = ((k % p) + p) % p;
    std::vector<u64> poly(p, 0);
    poly[r] = 1;
    return reduce(poly);
}

CyclotomicRing::Elem CyclotomicRing::add(const Elem& a, const Elem& b) const {
    Elem c(d_);
    for (int i = 0; i < d_; ++i) c[i] = R_.add(a[i], b[i]);
    return c;
}
CyclotomicRing::Elem CyclotomicRing::sub(const Elem& a, const Elem& b) const {
    Elem c(d_);
    for (int i = 0; i < d_; ++i) c[i] = R_.sub(a[i], b[i]);
    return c;
}
CyclotomicRing::Elem CyclotomicRing::mul(const Elem& a, const Elem& b) const {
    std::vector<u64> poly(2 * d_, 0);
    for (int i = 0; i < d_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < d_; ++j) poly[i + j] = R_.add(poly[i + j], R_.mul(a[i], b[j]));
    }
    return reduce(poly);
}
u64 CyclotomicRing::evaluate_at_one(const Elem& a) const {
    u64 s = 0;
    for (u64 c : a) s = R_.add(s, c);
    return s % R_.p();
}
bool CyclotomicRing::is_scalar(const Elem& a) const {
    return std::all_of(a.begin() + 1, a.end(), [](u64 c) { return c == 0; });
}
bool CyclotomicRing::is_unit(const Elem& a) const { return evaluate_at_one(a) != 0; }

// ---------------------------------------------------------------- unramified

namespace {
// polynomial remainder over F_p, used only for the irreducibility test
std::vector<u64> poly_mod_fp(std::vector<u64> a, const std::vector<u64>& m, u64 p) {
    auto trim = [](std::vector<u64>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    const size_t dm = m.size() - 1;
    u64 lead_inv = 1;
    {
        u64 l = m.back() % p;
        for (u64 e = p - 2, b = l; e; e >>= 1, b = b * b % p)
            if (e & 1) lead_inv = lead_inv * b % p;
    }
    while (a.size() > dm) {
        u64 f = a.back() * lead_inv % p;
        size_t shift = a.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p * p - f * m[i] % p) % p;
        trim(a);
    }
    return a;
}
}  // namespace

bool UnramifiedRing::irreducible_mod_p(u64 p, const std::vector<u64>& lower) {
    const size_t d = lower.size();
    if (d == 0) return false;
    std::vector<u64> f(lower);
    for (auto& c : f) c %= p;
    f.push_back(1);
    if (d == 1) return true;
    // brute force: no monic factor of degree <= d/2 (sizes here are tiny)
    for (size_t k = 1; k <= d / 2; ++k) {
        std::vector<u64> g(k + 1, 0);
        g[k] = 1;
        u64 count = ipow(p, static_cast<unsigned>(k));
        for (u64 idx = 0; idx < count; ++idx) {
            u64 t = idx;
            for (size_t i = 0; i < k; ++i) {
                g[i] = t % p;
                t /= p;
            }
            if (poly_mod_fp(f, g, p).empty()) return false;
        }
    }
    return true;
}

UnramifiedRing::UnramifiedRing(const Zmod& base, std::vector<u64> lower)
    : R_(base), d_(static_cast<int>(lower.size())), f_(std::move(lower)) {
    if (d_ < 1) throw InvalidArgument("unramified modulus must have degree >= 1");
    for (auto& c : f_) c %= R_.modulus();
    if (!irreducible_mod_p(R_.p(), f_)) throw InvalidArgument("unramified modulus is reducible mod p");
    // Hensel/Newton lift of the root x^p of f mod p
    std::vector<u64> full(f_);
    full.push_back(1);
    std::vector<u64> deriv(d_, 0);
    for (int i = 1; i <= d_; ++i) deriv[i - 1] = R_.mul(full[i], static_cast<u64>(i));
    Elem y = pow(generator(), R_.p());
    for (int it = 0; it < 2 * R_.m() + 2; ++it) {
        Elem fy = eval_poly(full, y);
        Elem dy = eval_poly(deriv, y);
        y = sub(y, mul(fy, inv(dy)));
    }
    frob_root_ = y;
}

UnramifiedRing::Elem UnramifiedRing::reduce(std::vector<u64> poly) const {
    for (int i = static_cast<int>(poly.size()) - 1; i >= d_; --i) {
        u64 c = poly[i];
        if (!c) continue;
        poly[i] = 0;
        for (int k = 0; k < d_; ++k) poly[i - d_ + k] = R_.sub(poly[i - d_ + k], R_.mul(c, f_[k]));
    }
    poly.resize(d_, 0);
    return poly;
}

UnramifiedRing::Elem UnramifiedRing::scalar(u64 c) const {
    Elem e(d_, 0);
    e[0] = c % R_.modulus();
    return e;
}
UnramifiedRing::Elem UnramifiedRing::generator() const {
    std::vector<u64> poly(2, 0);
    poly[1] = 1;
    return reduce(poly);
}
UnramifiedRing::Elem UnramifiedRing::add(const Elem& a, const Elem& b) const {
    Elem c(d_);
    for (int i = 0; i < d_; ++i) c[i] = R_.add(a[i], b[i]);
    return c;
}
UnramifiedRing::Elem UnramifiedRing::sub(const Elem& a, const Elem& b) const {
    Elem c(d_);
    for (int i = 0; i < d_; ++i) c[i] = R_.sub(a[i], b[i]);
    return c;
}
UnramifiedRing::Elem UnramifiedRing::mul(const Elem& a, const Elem& b) const {
    std::vector<u64> poly(2 * d_, 0);
    for (int i = 0; i < d_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < d_; ++j) poly[i + j] = R_.add(poly[i + j], R_.mul(a[i], b[j]));
    }
    return reduce(poly);
}
UnramifiedRing::Elem UnramifiedRing::pow(Elem a, u64 e) const {
    Elem r = scalar(1);
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}
bool UnramifiedRing::is_unit(const Elem& a) const {
    return std::any_of(a.begin(), a.end(), [&](u64 c) { return c % R_.p() != 0; });
}
UnramifiedRing::Elem UnramifiedRing::inv(const Elem& a) const {
    if (!is_unit(a)) throw NonUnit("element of the unramified ring is not a unit");
    // the residue field has p^d elements, so a^{p^d - 2} inverts mod p; then Newton
    const u64 q1 = ipow(R_.p(), static_cast<unsigned>(d_));
    Elem b = pow(a, q1 - 2);
    for (int it = 0; it < R_.m() + 1; ++it) b = mul(b, sub(scalar(2), mul(a, b)));
    return b;
}
UnramifiedRing::Elem UnramifiedRing::eval_poly(const std::vector<u64>& coeffs, const Elem& at) const {
    Elem r = zero();
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) r = add(mul(r, at), scalar(coeffs[i]));
    return r;
}
UnramifiedRing::Elem UnramifiedRing::frobenius(const Elem& a) const { return eval_poly(a, frob_root_); }
UnramifiedRing::Elem UnramifiedRing::teichmuller(const Elem& a) const {
    if (!is_unit(a)) throw NonUnit("Teichmueller lift needs a unit");
    const u64 q1 = ipow(R_.p(), static_cast<unsigned>(d_));
    Elem x = a;
    for (;;) {
        Elem y = pow(x, q1);
        if (y == x) return x;
        x = y;
    }
}

// ---------------------------------------------------------------- scaled approximants

ScaledApproximant::ScaledApproximant(const Zmod& R, std::vector<u64> payload, int scale)
    : R_(R), scale_(scale), payload_(std::move(payload)) {
    if (scale < 0) throw InvalidArgument("negative scale");
    if (scale_ >= R_.m()) throw InexactDivision("scale leaves no determined digits");
    for (auto& c : payload_) c %= R_.modulus();
}

bool ScaledApproximant::is_integral() const {
    return std::all_of(payload_.begin(), payload_.end(), [&](u64 c) { return R_.val(c) >= scale_; });
}

std::vector<u64> ScaledApproximant::integral_value(int prec) const {
    if (prec > precision()) throw InvalidArgument("requested more digits than are determined");
    if (!is_integral()) throw IntegralityFailure("approximant has a nontrivial denominator");
    const u64 ps = ipow(R_.p(), static_cast<unsigned>(scale_));
    const u64 q = ipow(R_.p(), static_cast<unsigned>(prec));
    std::vector<u64> out(payload_.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = (payload_[i] / ps) % q;
    return out;
}

void ScaledApproximant::lift_scale(int s) {
    if (s <= scale_) return;
    if (s >= R_.m()) throw InexactDivision("scale leaves no determined digits");
    const u64 f = ipow(R_.p(), static_cast<unsigned>(s - scale_));
    for (auto& c : payload_) c = R_.mul(c, f);
    scale_ = s;
}

ScaledApproximant& ScaledApproximant::operator+=(const ScaledApproximant& o) {
    if (o.R_ != R_ || o.payload_.size() != payload_.size()) throw InvalidArgument("approximant mismatch");
    ScaledApproximant b = o;
    int s = std::max(scale_, b.scale_);
    lift_scale(s);
    b.lift_scale(s);
    for (size_t i = 0; i < payload_.size(); ++i) payload_[i] = R_.add(payload_[i], b.payload_[i]);
    return *this;
}
ScaledApproximant& ScaledApproximant::operator-=(const ScaledApproximant& o) {
    ScaledApproximant b = o;
    b.scale_by(-1);
    return *this += b;
}
ScaledApproximant& ScaledApproximant::scale_by(i64 c) {
    u64 f = R_.reduce(c);
    for (auto& x : payload_) x = R_.mul(x, f);
    return *this;
}
ScaledApproximant& ScaledApproximant::exact_divide(i64 n) {
    if (n == 0) throw InvalidArgument("division by zero");
    const u64 p = R_.p();
    int v = 0;
    i64 rest = n;
    while (rest % static_cast<i64>(p) == 0) {
        rest /= static_cast<i64>(p);
        ++v;
    }
    u64 inv = R_.inv(R_.reduce(rest));
    for (auto& x : payload_) x = R_.mul(x, inv);
    if (scale_ + v >= R_.m()) throw InexactDivision("division by p^" + std::to_string(v) + " exhausts the working precision");
    scale_ += v;
    return *this;
}
ScaledApproximant& ScaledApproximant::normalize() {
    while (scale_ > 0 && std::all_of(payload_.begin(), payload_.end(), [&](u64 c) { return R_.val(c) >= 1; })) {
        Zmod lower(R_.p(), R_.m() - 1);
        for (auto& c : payload_) c = (c / R_.p()) % lower.modulus();
        R_ = lower;
        --scale_;
    }
    return *this;
}
bool ScaledApproximant::equals(const ScaledApproximant& o, int prec) const {
    if (payload_.size() != o.payload_.size() || R_.p() != o.R_.p()) return false;
    int digits = std::min({precision(), o.precision(), prec});
    // compare a * p^{sb} and b * p^{sa} modulo p^{digits + sa + sb}
    const u64 p = R_.p();
    for (size_t i = 0; i < payload_.size(); ++i) {
        mpz_class a = mpz_class(std::to_string(payload_[i])) * mpz_class(std::to_string(ipow(p, o.scale_)));
        mpz_class b = mpz_class(std::to_string(o.payload_[i])) * mpz_class(std::to_string(ipow(p, scale_)));
        mpz_class mod = 1;
        for (int k = 0; k < digits + scale_ + o.scale_; ++k) mod *= static_cast<unsigned long>(p);
        mpz_class d = a - b;
        mpz_class r = d % mod;
        if (r != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------- rationals

int padic_valuation(const Rational& q, u64 p) {
    if (q == 0) return 1 << 20;
    auto vz = [&](mpz_class z) {
        int v = 0;
        if (z < 0) z = -z;
        while (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
            z /= static_cast<unsigned long>(p);
            ++v;
        }
        return v;
    };
    return vz(q.get_num()) - vz(q.get_den());
}

bool is_p_integral(const Rational& q, u64 p) { return padic_valuation(q, p) >= 0; }

u64 reduce_mod_prime_power(const Rational& q, u64 p, int k) {
    if (!is_p_integral(q, p)) throw NonIntegral("rational " + q.get_str() + " is not " + std::to_string(p) + "-integral");
    mpz_class mod = 1;
    for (int i = 0; i < k; ++i) mod *= static_cast<unsigned long>(p);
    mpz_class num = q.get_num() % mod;
    if (num < 0) num += mod;
    mpz_class den = q.get_den() % mod;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) {
        if (mod == 1) return 0;
        throw NonIntegral("denominator not invertible");
    }
    mpz_class r = (num * inv) % mod;
    return r.get_ui();
}

Rational rational_pow(const Rational& q, unsigned e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q.get_den().get_mpz_t(), e);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q) {
    Rational c(q);
    c.canonicalize();
    return c.get_str();
}

}  // namespace iwasawa
