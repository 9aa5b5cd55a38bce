#include "iwasawa/lfunctions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace iwasawa {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m); }

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    for (; e; e >>= 1, b = mulmod(b, b, m))
        if (e & 1) r = mulmod(r, b, m);
    return r;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr) {
        i64 q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw NonUnit("residue is not invertible");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

Rational binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

void require_even_weight(int k) {
    if (k <= 0 || k % 2 != 0) throw InvalidArgument("weight k must be a positive even integer");
}

}  // namespace

// ------------------------------------------------------------------ Bernoulli

Rational bernoulli_number(int k) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    if (k < 0) throw InvalidArgument("Bernoulli index must be nonnegative");
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= k) {
        const int n = static_cast<int>(cache.size());
        Rational s = 0;
        for (int i = 0; i < n; ++i) s += binomial(n + 1, i) * cache[i];
        Rational b = -s / Rational(n + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[k];
}

Rational bernoulli_poly(int k, const Rational& x) {
    Rational acc = 0, power = 1;
    // Horner-free: sum_i C(k,i) B_i x^{k-i}, accumulated from i = k down
    for (int i = k; i >= 0; --i) {
        acc += binomial(k, i) * bernoulli_number(i) * power;
        power *= x;
    }
    acc.canonicalize();
    return acc;
}

// ------------------------------------------------------------------ cyclotomic fields

namespace {

using IntPoly = std::vector<mpz_class>;

IntPoly cyclotomic_poly(u64 n) {
    static std::mutex mu;
    static std::map<u64, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (u64 d = 1; d < n; ++d) {
        if (n % d) continue;
        IntPoly den = cyclotomic_poly(d);
        // exact division by a monic polynomial
        const size_t dd = den.size() - 1;
        IntPoly q(num.size() - dd, 0);
        for (size_t i = num.size() - 1; i + 1 > dd && i >= dd; --i) {
            mpz_class c = num[i];
            q[i - dd] = c;
            for (size_t t = 0; t <= dd; ++t) num[i - dd + t] -= c * den[t];
            if (i == dd) break;
        }
        num = q;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[n] = num;
    return num;
}

}  // namespace

CyclotomicField::CyclotomicField(u64 n) : n_(n) {
    if (n == 0) throw InvalidArgument("cyclotomic order must be positive");
    for (const auto& c : cyclotomic_poly(n)) poly_.emplace_back(c);
}

CyclotomicField::Elem CyclotomicField::reduce_poly(std::vector<Rational> v) const {
    const int d = degree();
    for (int i = static_cast<int>(v.size()) - 1; i >= d; --i) {
        if (v[i] == 0) continue;
        Rational c = v[i];
        for (int t = 0; t <= d; ++t) v[i - d + t] -= c * poly_[t];
    }
    v.resize(d);
    return v;
}

CyclotomicField::Elem CyclotomicField::scalar(const Rational& q) const {
    Elem e = zero();
    e[0] = q;
    return e;
}

CyclotomicField::Elem CyclotomicField::root(i64 e) const {
    i64 r = e % static_cast<i64>(n_);
    if (r < 0) r += static_cast<i64>(n_);
    std::vector<Rational> v(static_cast<size_t>(std::max<i64>(r + 1, degree())), Rational(0));
    v[r] = 1;
    return reduce_poly(std::move(v));
}

CyclotomicField::Elem CyclotomicField::add(const Elem& a, const Elem& b) const {
    Elem c(a);
    for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

CyclotomicField::Elem CyclotomicField::sub(const Elem& a, const Elem& b) const {
    Elem c(a);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return c;
}

CyclotomicField::Elem CyclotomicField::mul(const Elem& a, const Elem& b) const {
    std::vector<Rational> v(a.size() + b.size(), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) v[i + j] += a[i] * b[j];
    }
    return reduce_poly(std::move(v));
}

CyclotomicField::Elem CyclotomicField::scale(const Elem& a, const Rational& q) const {
    Elem c(a);
    for (auto& x : c) x *= q;
    return c;
}

bool CyclotomicField::is_rational(const Elem& a) const {
    return std::all_of(a.begin() + 1, a.end(), [](const Rational& q) { return q == 0; });
}

std::vector<u64> CyclotomicField::reduce(const Elem& a, u64 p, int k) const {
    std::vector<u64> out;
    for (const auto& q : a) out.push_back(reduce_mod_prime_power(q, p, k));
    return out;
}

// ------------------------------------------------------------------ ray classes and characters

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

RayClassLevel RayClassLevel::make(u64 p, u64 conductor, int level) {
    if (p == 2 || !is_prime(p)) throw InvalidArgument("p must be an odd prime");
    if (conductor == 0 || conductor % p == 0) throw InvalidArgument("conductor must be positive and prime to p");
    if (level < 0) throw InvalidArgument("level must be nonnegative");
    RayClassLevel L;
    L.p = p;
    L.conductor = conductor;
    L.level = level;
    L.modulus = conductor * ipow(p, static_cast<unsigned>(level + 1));
    if (L.modulus > 200000) throw BoundExceeded("ray class modulus too large");
    L.index.assign(L.modulus, -1);
    for (u64 r = 1; r <= L.modulus; ++r) {
        if (std::gcd(r, L.modulus) != 1) continue;
        u64 lo = std::min(r % L.modulus, (L.modulus - r) % L.modulus);
        if (lo == 0) lo = L.modulus;  // only when M = 1, which cannot happen here
        if (lo == r) L.classes.push_back(r);
    }
    for (size_t c = 0; c < L.classes.size(); ++c) {
        u64 r = L.classes[c] % L.modulus;
        L.index[r] = static_cast<int>(c);
        L.index[(L.modulus - r) % L.modulus] = static_cast<int>(c);
    }
    return L;
}

int RayClassLevel::class_of(i64 n) const {
    i64 r = n % static_cast<i64>(modulus);
    if (r < 0) r += static_cast<i64>(modulus);
    return index[static_cast<size_t>(r)];
}

std::vector<DirichletCharacter> dirichlet_characters(u64 M) {
    // generators of (Z/M)^x: a cyclic generator for each odd prime power, -1 and 5 for 2^a
    struct Gen {
        u64 element;  // residue mod M
        u64 order;
    };
    std::vector<Gen> gens;
    u64 rest = M;
    for (u64 q : prime_factors(M)) {
        u64 qa = 1;
        while (rest % q == 0) {
            rest /= q;
            qa *= q;
        }
        const u64 other = M / qa;
        auto embed = [&](u64 g) {
            // x = g mod qa, x = 1 mod other
            for (u64 t = 0; t < qa; ++t) {
                u64 x = 1 + other * t;
                if (x % qa == g % qa) return x % M;
            }
            throw Error("CRT failure");
        };
        if (q == 2) {
            if (qa >= 4) gens.push_back({embed(qa - 1), 2});
            if (qa >= 8) gens.push_back({embed(5), qa / 4});
            continue;
        }
        const u64 phi = qa / q * (q - 1);
        u64 g = 2;
        for (;; ++g) {
            if (g % q == 0) continue;
            bool primitive = true;
            for (u64 r : prime_factors(phi))
                if (powmod(g, phi / r, qa) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) break;
        }
        gens.push_back({embed(g), phi});
    }
    u64 n = 1;
    for (const auto& g : gens) n = std::lcm(n, g.order);

    // discrete logarithms by enumeration
    std::vector<std::vector<u64>> dlog(M);
    std::vector<u64> exps(gens.size(), 0);
    for (;;) {
        u64 v = 1 % M;
        for (size_t i = 0; i < gens.size(); ++i) v = mulmod(v, powmod(gens[i].element, exps[i], M), M);
        dlog[v] = exps;
        size_t i = 0;
        while (i < gens.size() && ++exps[i] == gens[i].order) exps[i++] = 0;
        if (i == gens.size()) break;
    }

    std::vector<DirichletCharacter> out;
    std::vector<u64> c(gens.size(), 0);
    for (;;) {
        DirichletCharacter chi;
        chi.modulus = M;
        chi.order = n;
        chi.exponent.assign(M, -1);
        for (u64 a = 0; a < M; ++a) {
            if (std::gcd(a, M) != 1 && M != 1) continue;
            u64 e = 0;
            for (size_t i = 0; i < gens.size(); ++i) e += c[i] * dlog[a % M][i] * (n / gens[i].order);
            chi.exponent[a] = static_cast<int>(e % n);
        }
        chi.even = M <= 2 || chi.exponent[M - 1] == 0;
        chi.conductor = M;
        for (u64 d = 1; d <= M; ++d) {
            if (M % d) continue;
            bool trivial = true;
            for (u64 a = 1; a < M && trivial; a += d)
                if (std::gcd(a, M) == 1 && chi.exponent[a] != 0) trivial = false;
            if (trivial) {
                chi.conductor = d;
                break;
            }
        }
        out.push_back(std::move(chi));
        size_t i = 0;
        while (i < gens.size() && ++c[i] == gens[i].order) c[i++] = 0;
        if (i == gens.size()) break;
    }
    return out;
}

// ------------------------------------------------------------------ instances

ZetaInstance ZetaInstance::make(u64 p, u64 conductor, int level, std::vector<u64> sigma, int u_power) {
    ZetaInstance inst;
    inst.level = RayClassLevel::make(p, conductor, level);
    if (u_power < 0) throw InvalidArgument("u must be a nonnegative power of the topological generator");
    inst.u_power = u_power;
    sigma.push_back(p);
    for (u64 q : prime_factors(conductor)) sigma.push_back(q);
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    for (u64 q : sigma)
        if (!is_prime(q)) throw InvalidArgument("Sigma must consist of primes");
    inst.sigma = sigma;
    // kappa^{p-1}(Z) = 1 + p^f Z_p; for u = 1 the offset is irrelevant and left at 1
    if (u_power == 0) return inst;
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(1 + p), static_cast<unsigned long>((p - 1) * u_power));
    t -= 1;
    inst.f_kappa = padic_valuation(Rational(t), p);
    return inst;
}

ZetaInstance ZetaInstance::at_level(int j) const {
    return make(level.p, level.conductor, j, sigma, u_power);
}

Rational ZetaInstance::kappa_u() const { return rational_pow(Rational(static_cast<long>(1 + level.p)), u_power); }

u64 ZetaInstance::u_residue() const {
    const u64 M = level.modulus;
    const u64 pp = M / level.conductor;
    const u64 target = powmod(1 + level.p, static_cast<u64>(u_power), pp);
    for (u64 t = 0; t < pp; ++t) {
        u64 x = 1 + level.conductor * t;
        if (x % pp == target) return x % M;
    }
    throw Error("CRT failure");
}

// ------------------------------------------------------------------ partial zeta values

Rational one_sided_class_sum(u64 a, u64 M, int k) {
    if (M == 0 || k <= 0) throw InvalidArgument("class sum needs M > 0 and k > 0");
    u64 r = a % M;
    if (r == 0) r = M;
    Rational v = rational_pow(Rational(static_cast<long>(M)), static_cast<unsigned>(k - 1)) *
                 (-bernoulli_poly(k, Rational(static_cast<long>(r), static_cast<long>(M))) / Rational(k));
    v.canonicalize();
    return v;
}

namespace {

// sum over n > 0, n = +-a mod M, at s = 1 - k, no Euler factors removed
Rational two_sided_hurwitz(u64 a, u64 M, int k) {
    if (M <= 2 || a % M == (M - a % M) % M) return one_sided_class_sum(a, M, k);
    return one_sided_class_sum(a, M, k) + one_sided_class_sum(M - a % M, M, k);
}

void check_zeta_args(u64 a, u64 M, const std::vector<u64>& sigma, int k) {
    require_even_weight(k);
    if (M == 0 || std::gcd(a, M) != 1) throw InvalidArgument("class must be prime to the modulus");
    for (u64 q : prime_factors(M))
        if (std::find(sigma.begin(), sigma.end(), q) == sigma.end())
            throw InvalidArgument("Sigma must contain every prime dividing the modulus");
}

std::vector<u64> extra_primes(u64 M, std::vector<u64> sigma) {
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    std::vector<u64> out;
    for (u64 l : sigma)
        if (M % l) out.push_back(l);
    return out;
}

Rational remove_euler(u64 a, u64 M, const std::vector<u64>& primes, size_t from, int k) {
    if (from == primes.size()) return two_sided_hurwitz(a, M, k);
    const u64 l = primes[from];
    const u64 a_over_l = mulmod(a % M, invmod(l % M, M), M);
    return remove_euler(a, M, primes, from + 1, k) -
           rational_pow(Rational(static_cast<long>(l)), static_cast<unsigned>(k - 1)) *
               remove_euler(a_over_l, M, primes, from + 1, k);
}

}  // namespace

Rational partial_zeta(u64 a, u64 M, const std::vector<u64>& sigma, int k) {
    check_zeta_args(a, M, sigma, k);
    Rational r = remove_euler(a, M, extra_primes(M, sigma), 0, k);
    r.canonicalize();
    return r;
}

Rational partial_zeta_refined(u64 a, u64 M, const std::vector<u64>& sigma, int k) {
    check_zeta_args(a, M, sigma, k);
    u64 L = 1;
    for (u64 l : extra_primes(M, sigma)) L *= l;
    const u64 big = M * L;
    const Rational scale = rational_pow(Rational(static_cast<long>(big)), static_cast<unsigned>(k - 1)) / Rational(k);
    const u64 a1 = a % M, a2 = (M - a % M) % M;
    Rational acc = 0;
    for (u64 b = 1; b <= big; ++b) {
        if (std::gcd(b, L) != 1) continue;
        const u64 r = b % M;
        if (r != a1 && r != a2) continue;
        acc -= bernoulli_poly(k, Rational(static_cast<long>(b), static_cast<long>(big)));
    }
    acc *= scale;
    acc.canonicalize();
    return acc;
}

LocallyConstant class_indicator(const RayClassLevel& L, int cls) {
    LocallyConstant e(L.size(), Rational(0));
    e.at(cls) = 1;
    return e;
}

namespace {

std::vector<Rational> class_zetas(const ZetaInstance& inst, int k) {
    std::vector<Rational> z;
    for (u64 r : inst.level.classes) z.push_back(partial_zeta(r, inst.level.modulus, inst.sigma, k));
    return z;
}

Rational delta_from_zetas(const ZetaInstance& inst, const std::vector<Rational>& z, const LocallyConstant& eps, int k) {
    const auto& L = inst.level;
    const u64 u = inst.u_residue();
    Rational plain = 0, shifted = 0;
    for (int x = 0; x < L.size(); ++x) {
        plain += eps[x] * z[x];
        shifted += eps[L.class_of(static_cast<i64>(mulmod(u, L.classes[x], L.modulus)))] * z[x];
    }
    Rational r = plain - rational_pow(inst.kappa_u(), static_cast<unsigned>(k)) * shifted;
    r.canonicalize();
    return r;
}

}  // namespace

Rational L_sigma(const ZetaInstance& inst, const LocallyConstant& eps, int k) {
    if (static_cast<int>(eps.size()) != inst.level.size()) throw InvalidArgument("function has the wrong number of classes");
    auto z = class_zetas(inst, k);
    Rational acc = 0;
    for (size_t x = 0; x < z.size(); ++x) acc += eps[x] * z[x];
    acc.canonicalize();
    return acc;
}

Rational delta_u(const ZetaInstance& inst, const LocallyConstant& eps, int k) {
    if (static_cast<int>(eps.size()) != inst.level.size()) throw InvalidArgument("function has the wrong number of classes");
    return delta_from_zetas(inst, class_zetas(inst, k), eps, k);
}

std::vector<Rational> delta_values(const ZetaInstance& inst, int k) {
    auto z = class_zetas(inst, k);
    std::vector<Rational> out;
    for (int x = 0; x < inst.level.size(); ++x) out.push_back(delta_from_zetas(inst, z, class_indicator(inst.level, x), k));
    return out;
}

CyclotomicField::Elem L_sigma_character(const ZetaInstance& inst, const DirichletCharacter& psi,
                                        const CyclotomicField& K, int k) {
    require_even_weight(k);
    if (K.order() % psi.order != 0) throw InvalidArgument("field does not contain the character values");
    const u64 M = psi.modulus, d = psi.conductor;
    const i64 stretch = static_cast<i64>(K.order() / psi.order);
    // value of the primitive character at a (prime to d), through a lift prime to M
    auto primitive_exponent = [&](u64 a) -> i64 {
        for (u64 b = a % d; b < M + d * M; b += d)
            if (b > 0 && std::gcd(b, M) == 1) return psi.exponent[b % M];
        throw Error("no unit lift");
    };
    CyclotomicField::Elem gen_bernoulli = K.zero();
    const Rational dk = rational_pow(Rational(static_cast<long>(d)), static_cast<unsigned>(k - 1));
    for (u64 a = 1; a <= d; ++a) {
        if (std::gcd(a, d) != 1) continue;
        Rational b = dk * bernoulli_poly(k, Rational(static_cast<long>(a), static_cast<long>(d)));
        gen_bernoulli = K.add(gen_bernoulli, K.scale(K.root(primitive_exponent(a) * stretch), b));
    }
    CyclotomicField::Elem value = K.scale(gen_bernoulli, Rational(-1, k));
    for (u64 l : inst.sigma) {
        if (d % l == 0) continue;
        Rational lk = rational_pow(Rational(static_cast<long>(l)), static_cast<unsigned>(k - 1));
        CyclotomicField::Elem factor = K.sub(K.scalar(1), K.scale(K.root(primitive_exponent(l) * stretch), lk));
        value = K.mul(value, factor);
    }
    return value;
}

std::vector<u64> rw_approximant(const ZetaInstance& inst, int k) {
    const u64 p = inst.level.p;
    const int t = inst.precision();
    const u64 q = ipow(p, static_cast<unsigned>(t));
    auto vals = delta_values(inst, k);
    std::vector<u64> out;
    for (int x = 0; x < inst.level.size(); ++x) {
        u64 delta;
        try {
            delta = reduce_mod_prime_power(vals[x], p, t);
        } catch (const NonIntegral&) {
            throw NonIntegral("Delta value at class " + std::to_string(inst.level.classes[x]) + " is not p-integral");
        }
        u64 kappa_k = powmod(inst.level.classes[x], static_cast<u64>(k), q);
        out.push_back(mulmod(delta, invmod(kappa_k, q), q));
    }
    return out;
}

// ------------------------------------------------------------------ checks

Verdict check_inverse_system(const ZetaInstance& inst, int k) {
    if (inst.level.level < 1) throw InvalidArgument("inverse-system check needs level >= 1");
    ZetaInstance lower = inst.at_level(inst.level.level - 1);
    auto upper_coeffs = rw_approximant(inst, k);
    auto lower_coeffs = rw_approximant(lower, k);
    const u64 q = ipow(inst.level.p, static_cast<unsigned>(lower.precision()));
    std::vector<u64> image(lower.level.size(), 0);
    for (int x = 0; x < inst.level.size(); ++x) {
        int y = lower.level.class_of(static_cast<i64>(inst.level.classes[x]));
        image[y] = (image[y] + upper_coeffs[x]) % q;
    }
    for (int y = 0; y < lower.level.size(); ++y)
        if (image[y] != lower_coeffs[y] % q)
            return Verdict::fail("inverse system", y, -1,
                                 "class " + std::to_string(lower.level.classes[y]) + " at level " +
                                     std::to_string(lower.level.level),
                                 {image[y], lower_coeffs[y]});
    return Verdict::pass("inverse system");
}

Verdict check_k_independence(const ZetaInstance& inst, int k, int k2) {
    auto a = rw_approximant(inst, k);
    auto b = rw_approximant(inst, k2);
    for (int x = 0; x < inst.level.size(); ++x)
        if (a[x] != b[x])
            return Verdict::fail("k independence", x, -1, "class " + std::to_string(inst.level.classes[x]),
                                 {a[x], b[x]});
    return Verdict::pass("k independence");
}

Verdict check_interpolation(const ZetaInstance& inst, int k) {
    const auto& L = inst.level;
    const u64 p = L.p;
    const int t = inst.precision();
    const u64 q = ipow(p, static_cast<unsigned>(t));
    auto coeffs = rw_approximant(inst, k);
    auto chars = dirichlet_characters(L.modulus);
    if (chars.empty()) return Verdict::pass("interpolation");
    CyclotomicField K(chars.front().order);
    const u64 u = inst.u_residue();
    const Rational kappa_uk = rational_pow(inst.kappa_u(), static_cast<unsigned>(k));
    int index = 0;
    for (const auto& psi : chars) {
        if (!psi.even) continue;
        // psi kappa^k applied to the approximant
        CyclotomicField::Elem lhs = K.zero();
        for (int x = 0; x < L.size(); ++x) {
            u64 w = mulmod(coeffs[x], powmod(L.classes[x], static_cast<u64>(k), q), q);
            lhs = K.add(lhs, K.scale(K.root(psi.exponent[L.classes[x] % L.modulus]), Rational(static_cast<long>(w))));
        }
        CyclotomicField::Elem euler = K.sub(K.scalar(1), K.scale(K.root(psi.exponent[u]), kappa_uk));
        CyclotomicField::Elem rhs = K.mul(euler, L_sigma_character(inst, psi, K, k));
        auto a = K.reduce(lhs, p, t), b = K.reduce(rhs, p, t);
        if (a != b)
            return Verdict::fail("interpolation", index, -1,
                                 "even character #" + std::to_string(index) + " of conductor " +
                                     std::to_string(psi.conductor),
                                 K.reduce(K.sub(lhs, rhs), p, t));
        ++index;
    }
    return Verdict::pass("interpolation");
}

namespace {

struct LayerData {
    std::vector<u64> classes;            // y with y^{p-1} = 1 mod p^2, at level j+1 of Q
    std::vector<Rational> zeta;          // partial zeta of the layer at each y
};

LayerData layer_zetas(const ZetaInstance& inst, int k) {
    const ZetaInstance upper = inst.at_level(inst.level.level + 1);
    const auto& L = upper.level;
    const u64 p = L.p;
    const u64 p2 = p * p;
    LayerData out;
    for (u64 r : L.classes)
        if (powmod(r, p - 1, p2) == 1) out.classes.push_back(r);
    auto chars = dirichlet_characters(L.modulus);
    CyclotomicField K(chars.front().order);
    // characters of the layer's class group = restrictions of even characters to the classes above
    std::map<std::vector<int>, CyclotomicField::Elem> products;
    std::map<std::vector<int>, int> multiplicity;
    for (const auto& psi : chars) {
        if (!psi.even) continue;
        std::vector<int> key;
        for (u64 y : out.classes) key.push_back(psi.exponent[y % L.modulus]);
        auto value = L_sigma_character(upper, psi, K, k);
        auto it = products.find(key);
        if (it == products.end()) products.emplace(key, value);
        else it->second = K.mul(it->second, value);
        ++multiplicity[key];
    }
    for (const auto& [key, count] : multiplicity)
        if (count != static_cast<int>(p)) throw Error("restriction to the layer is not p-to-one");
    for (size_t i = 0; i < out.classes.size(); ++i) {
        CyclotomicField::Elem acc = K.zero();
        for (const auto& [key, value] : products) acc = K.add(acc, K.mul(K.root(-key[i]), value));
        acc = K.scale(acc, Rational(1, static_cast<long>(out.classes.size())));
        if (!K.is_rational(acc)) throw Error("layer partial zeta is not rational");
        acc[0].canonicalize();
        out.zeta.push_back(acc[0]);
    }
    return out;
}

}  // namespace

Rational layer_partial_zeta(const ZetaInstance& inst, u64 y, int k) {
    LayerData data = layer_zetas(inst, k);
    const u64 M = inst.at_level(inst.level.level + 1).level.modulus;
    for (size_t i = 0; i < data.classes.size(); ++i)
        if (data.classes[i] % M == y % M || data.classes[i] % M == (M - y % M) % M) return data.zeta[i];
    throw InvalidArgument("class is not in the degree-p layer");
}

Verdict check_abelian_congruence(const ZetaInstance& inst, int k) {
    require_even_weight(k);
    const ZetaInstance upper = inst.at_level(inst.level.level + 1);
    const auto& L = upper.level;
    const u64 p = L.p;
    const u64 M = L.modulus;
    LayerData layer = layer_zetas(inst, k);
    auto position = [&](u64 r) -> size_t {
        for (size_t i = 0; i < layer.classes.size(); ++i)
            if (L.class_of(static_cast<i64>(layer.classes[i])) == L.class_of(static_cast<i64>(r))) return i;
        throw Error("class left the layer");
    };
    const u64 u_p = powmod(upper.u_residue(), p, M);
    const u64 u_p_inv = invmod(u_p, M);
    const Rational kappa_upk = rational_pow(upper.kappa_u(), static_cast<unsigned>(p * k));
    const auto z = class_zetas(upper, static_cast<int>(p) * k);
    for (size_t i = 0; i < layer.classes.size(); ++i) {
        const u64 y = layer.classes[i];
        Rational lhs = layer.zeta[i] - kappa_upk * layer.zeta[position(mulmod(u_p_inv, y, M))];
        LocallyConstant eps(L.size(), Rational(0));
        for (int x = 0; x < L.size(); ++x)
            if (L.class_of(static_cast<i64>(powmod(L.classes[x], p, M))) == L.class_of(static_cast<i64>(y))) eps[x] = 1;
        Rational rhs = delta_from_zetas(upper, z, eps, static_cast<int>(p) * k);
        if (!is_p_integral(lhs, p) || !is_p_integral(rhs, p))
            return Verdict::fail("abelian congruence", static_cast<int>(i), -1,
                                 "non-integral value at class " + std::to_string(y), {});
        u64 a = reduce_mod_prime_power(lhs, p, 1), b = reduce_mod_prime_power(rhs, p, 1);
        if (a != b)
            return Verdict::fail("abelian congruence", static_cast<int>(i), -1,
                                 "class " + std::to_string(y) + " of the layer", {a, b});
    }
    return Verdict::pass("abelian congruence");
}

// ------------------------------------------------------------------ Delta-tables

namespace {

struct Cursor {
    const std::string& line;
    int line_no;
    size_t pos = 0;

    void skip() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no, static_cast<int>(pos) + 1); }
    bool done() {
        skip();
        return pos >= line.size();
    }
    void expect(char c) {
        skip();
        if (pos >= line.size() || line[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string word() {
        skip();
        size_t start = pos;
        while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_')) ++pos;
        if (start == pos) fail("expected a keyword");
        return line.substr(start, pos - start);
    }
    mpz_class integer() {
        skip();
        size_t start = pos;
        if (pos < line.size() && (line[pos] == '-' || line[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
        if (digits == pos) {
            pos = start;
            fail("expected an integer");
        }
        return mpz_class(line.substr(start, pos - start));
    }
    u64 small_natural(u64 limit) {
        size_t start = pos;
        mpz_class v = integer();
        if (v < 0 || v > limit) {
            pos = start;
            fail("integer out of range");
        }
        return v.get_ui();
    }
};

}  // namespace

DeltaTable parse_delta_table(const std::string& text) {
    DeltaTable t;
    bool seen[5] = {false, false, false, false, false};
    const char* keys[5] = {"F_cond", "p", "j", "Sigma", "u"};
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool header_done = false;
    std::map<std::pair<u64, int>, bool> seen_record;
    RayClassLevel level;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        Cursor c{line, line_no};
        if (c.done()) continue;
        c.skip();
        if (line[c.pos] == '(') {
            if (!header_done) {
                for (int i = 0; i < 5; ++i)
                    if (!seen[i]) c.fail(std::string("record before header key '") + keys[i] + "'");
                level = RayClassLevel::make(t.p, t.conductor, t.level);
                if (level.class_of(static_cast<i64>(t.u)) < 0) c.fail("u is not prime to the modulus");
                header_done = true;
            }
            c.expect('(');
            c.skip();
            size_t cls_pos = c.pos;
            u64 cls = c.small_natural(level.modulus);
            c.expect(',');
            c.skip();
            size_t k_pos = c.pos;
            u64 k = c.small_natural(1000);
            c.expect(',');
            mpz_class num = c.integer();
            c.expect(',');
            c.skip();
            size_t den_pos = c.pos;
            mpz_class den = c.integer();
            c.expect(')');
            if (!c.done()) c.fail("trailing characters after record");
            if (level.class_of(static_cast<i64>(cls)) < 0 || level.classes[level.class_of(static_cast<i64>(cls))] != cls) {
                c.pos = cls_pos;
                c.fail("not a class representative at this level");
            }
            if (k == 0 || k % 2) {
                c.pos = k_pos;
                c.fail("weight must be positive and even");
            }
            if (den <= 0) {
                c.pos = den_pos;
                c.fail("denominator must be positive");
            }
            if (seen_record[{cls, static_cast<int>(k)}]) {
                c.pos = cls_pos;
                c.fail("duplicate record");
            }
            seen_record[{cls, static_cast<int>(k)}] = true;
            Rational v(num, den);
            v.canonicalize();
            if (!is_p_integral(v, t.p))
                throw NonIntegral("record on line " + std::to_string(line_no) + " is not p-integral");
            t.records.push_back({cls, static_cast<int>(k), v});
            continue;
        }
        if (header_done) c.fail("header keys must precede the records");
        const size_t key_pos = c.pos;
        std::string key = c.word();
        int which = -1;
        for (int i = 0; i < 5; ++i)
            if (key == keys[i]) which = i;
        c.pos = key_pos;
        if (which < 0) c.fail("unknown header key '" + key + "'");
        if (seen[which]) c.fail("repeated header key '" + key + "'");
        seen[which] = true;
        c.pos = key_pos + key.size();
        switch (which) {
            case 0: t.conductor = c.small_natural(100000); break;
            case 1: t.p = c.small_natural(1000); break;
            case 2: t.level = static_cast<int>(c.small_natural(8)); break;
            case 3:
                while (!c.done()) t.sigma.push_back(c.small_natural(100000));
                break;
            case 4: t.u = c.small_natural(1000000000); break;
        }
        if (!c.done()) c.fail("trailing characters after header value");
    }
    if (!header_done) {
        for (int i = 0; i < 5; ++i)
            if (!seen[i]) throw ParseError(std::string("missing header key '") + keys[i] + "'", line_no, 1);
        RayClassLevel::make(t.p, t.conductor, t.level);
    }
    return t;
}

std::string format_delta_table(const DeltaTable& t) {
    std::ostringstream out;
    out << "F_cond " << t.conductor << "\np " << t.p << "\nj " << t.level << "\nSigma";
    for (u64 q : t.sigma) out << ' ' << q;
    out << "\nu " << t.u << "\n";
    for (const auto& r : t.records)
        out << '(' << r.cls << ", " << r.k << ", " << r.value.get_num().get_str() << ", "
            << r.value.get_den().get_str() << ")\n";
    return out.str();
}

DeltaTable delta_table_from_instance(const ZetaInstance& inst, const std::vector<int>& ks) {
    DeltaTable t;
    t.conductor = inst.level.conductor;
    t.p = inst.level.p;
    t.level = inst.level.level;
    t.sigma = inst.sigma;
    t.u = inst.u_residue();
    for (int k : ks) {
        auto vals = delta_values(inst, k);
        for (int x = 0; x < inst.level.size(); ++x) t.records.push_back({inst.level.classes[x], k, vals[x]});
    }
    return t;
}

Verdict check_k_independence_table(const DeltaTable& t, int k, int k2) {
    const u64 p = t.p;
    const int prec = 1 + t.level;
    const u64 q = ipow(p, static_cast<unsigned>(prec));
    std::map<u64, std::pair<const Rational*, const Rational*>> by_class;
    for (const auto& r : t.records) {
        if (r.k == k) by_class[r.cls].first = &r.value;
        if (r.k == k2) by_class[r.cls].second = &r.value;
    }
    for (const auto& [cls, vals] : by_class) {
        if (!vals.first || !vals.second)
            return Verdict::fail("k independence", static_cast<int>(cls), -1,
                                 "class " + std::to_string(cls) + " lacks one of the two weights", {});
        u64 a = mulmod(reduce_mod_prime_power(*vals.first, p, prec), invmod(powmod(cls, static_cast<u64>(k), q), q), q);
        u64 b = mulmod(reduce_mod_prime_power(*vals.second, p, prec), invmod(powmod(cls, static_cast<u64>(k2), q), q), q);
        if (a != b)
            return Verdict::fail("k independence", static_cast<int>(cls), -1, "class " + std::to_string(cls), {a, b});
    }
    if (by_class.empty()) return Verdict::fail("k independence", -1, -1, "table has no records", {});
    return Verdict::pass("k independence");
}

}  // namespace iwasawa
