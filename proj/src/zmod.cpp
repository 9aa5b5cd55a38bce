#include "iwasawa/zmod.hpp"

#include <limits>

namespace iwasawa {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<u64>::max() / base) throw BoundExceeded("integer power overflow");
        r *= base;
    }
    return r;
}

int valuation(i64 n, u64 p) {
    if (n == 0) return 1 << 20;
    int v = 0;
    u64 a = static_cast<u64>(n < 0 ? -n : n);
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

Zmod::Zmod(u64 p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw InvalidArgument("modulus base " + std::to_string(p) + " is not prime");
    if (m < 1) throw InvalidArgument("precision must be at least 1");
    q_ = ipow(p, static_cast<unsigned>(m));
    if (q_ >= (u64{1} << 40)) throw BoundExceeded("p^m exceeds the supported residue size");
    const u64 sq = (q_ - 1) * (q_ - 1);
    budget_ = sq == 0 ? std::numeric_limits<u64>::max() : std::numeric_limits<u64>::max() / sq;
}

u64 Zmod::pow(u64 a, u64 e) const {
    u64 r = 1 % q_;
    a %= q_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 Zmod::inv(u64 a) const {
    a %= q_;
    if (a % p_ == 0) throw NonUnit("residue " + std::to_string(a) + " is not a unit mod " + std::to_string(q_));
    // extended Euclid on (a, q)
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(q_), nr = static_cast<i64>(a);
    while (nr != 0) {
        i64 quo = r / nr;
        i64 tmp = t - quo * nt;
        t = nt;
        nt = tmp;
        tmp = r - quo * nr;
        r = nr;
        nr = tmp;
    }
    return reduce(t);
}

int Zmod::val(u64 a) const {
    a %= q_;
    if (a == 0) return m_;
    int v = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++v;
    }
    return v;
}

u64 teichmuller(const Zmod& R, u64 c) {
    if (!R.is_unit(c)) throw NonUnit("Teichmueller lift needs a unit");
    // c^{p^k} is constant mod p^m once k >= m-1; iterate until fixed.
    u64 x = c % R.modulus();
    for (;;) {
        u64 y = R.pow(x, R.p());
        if (y == x) return x;
        x = y;
    }
}

}  // namespace iwasawa
