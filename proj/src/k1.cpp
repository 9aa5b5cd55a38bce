#include "iwasawa/k1.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace iwasawa {

namespace {

int floor_log(u64 p, u64 n) {
    int k = 0;
    while (n >= p) {
        n /= p;
        ++k;
    }
    return k;
}

std::vector<u64> conj_sub(const Zmod& R, const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = R.sub(a[i], b[i]);
    return c;
}

std::vector<u64> reduce_all(const std::vector<u64>& a, u64 q) {
    std::vector<u64> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] % q;
    return c;
}

// ring coefficients divided by p^k; k-adic divisibility is required
std::vector<u64> exact_shift(const Zmod& R, const std::vector<u64>& x, int k, const char* what) {
    const u64 pk = ipow(R.p(), static_cast<unsigned>(k));
    std::vector<u64> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (R.val(x[i]) < k) throw IntegralityFailure(std::string(what) + ": coefficient not divisible by p^" + std::to_string(k));
        y[i] = x[i] / pk;
    }
    return y;
}

// last k with floor(k/N) - 1 - floor(log_p k) < W: every later k-term of the series vanishes mod p^W
int integral_log_cutoff(int N, u64 p, int W) {
    int K = 1;
    const int limit = N * (W + 8 * floor_log(p, static_cast<u64>(N) * (W + 8)) + 16);
    for (int k = 1; k <= limit; ++k)
        if (k / N - 1 - floor_log(p, k) < W) K = k;
    return K;
}

}  // namespace

// ------------------------------------------------------------------ theta

Elem theta_P(const LevelAlgebra& A, int P, const Elem& x, const std::vector<int>* reps) {
    const auto& d = A.lattice().at(P);
    return relative_norm(A.ring(), d.preimage, d.ab.class_of, A.sub_ring(P), x, reps);
}

Tuple theta(const LevelAlgebra& A, const Elem& x) {
    Tuple t;
    for (int P = 0; P < A.lattice().count(); ++P) t.push_back(theta_P(A, P, x));
    return t;
}

// ------------------------------------------------------------------ additive maps

Elem t_map(const LevelAlgebra& A, int P, const ConjModule::Elem& a) {
    const auto& L = A.level();
    const auto& B = L.group();
    const auto& d = A.lattice().at(P);
    const Zmod& R = A.coeffs();
    Elem out = A.sub_ring(P).zero();
    for (int c = 0; c < A.conj().size(); ++c) {
        if (!a[c]) continue;
        int g = A.conj().rep(c);
        for (int xq : d.left_cosets) {
            int x = L.lift(xq);
            int h = B.mul(B.mul(B.inv(x), g), x);
            int cls = d.ab.project(h);
            if (cls >= 0) out[cls] = R.add(out[cls], a[c]);
        }
    }
    return out;
}

Elem beta_P(const LevelAlgebra& A, int P, const ConjModule::Elem& a) {
    Elem t = t_map(A, P, a);
    return A.lattice().at(P).cyclic ? A.eta(P, t) : t;
}

Tuple beta(const LevelAlgebra& A, const ConjModule::Elem& a) {
    Tuple out;
    for (int P = 0; P < A.lattice().count(); ++P) out.push_back(beta_P(A, P, a));
    return out;
}

ScaledApproximant delta(const LevelAlgebra& A, const Tuple& t) {
    const Zmod& R = A.coeffs();
    const u64 p = A.p();
    const int S = valuation(A.group_order(), p);
    std::vector<u64> payload(A.conj().size(), 0);
    for (int P : A.lattice().cyclic_subgroups()) {
        const auto& d = A.lattice().at(P);
        const int index = A.group_order() / d.order();
        const u64 w = ipow(p, static_cast<unsigned>(S - valuation(index, p)));
        auto to_conj = A.sub_to_conj(P);
        for (int c = 0; c < d.ab.size(); ++c)
            if (t[P][c]) payload[to_conj[c]] = R.add(payload[to_conj[c]], R.mul(t[P][c], w));
    }
    return ScaledApproximant(R, payload, S);
}

// ------------------------------------------------------------------ logarithms

int radical_nilpotency_index(const FiniteGroup& C, u64 p) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, u64>, int> cache;
    const int n = C.size();
    // cache on a cheap fingerprint of the table: row of every element times the first few
    std::vector<int> key;
    key.push_back(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < std::min(n, 4); ++b) key.push_back(C.mul(a, b));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({key, p});
        if (it != cache.end()) return it->second;
    }
    std::vector<int> gens, cur{0};
    for (int g = 0; g < n; ++g) {
        if (std::binary_search(cur.begin(), cur.end(), g)) continue;
        gens.push_back(g);
        cur = C.closure(gens);
    }
    // echelon basis over F_p
    struct Echelon {
        u64 p;
        std::vector<std::pair<int, std::vector<u64>>> rows;
        bool insert(std::vector<u64> v) {
            for (auto& [piv, r] : rows) {
                if (!v[piv]) continue;
                u64 f = v[piv];
                for (size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + (p - f) * r[i]) % p;
            }
            int piv = -1;
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i]) {
                    piv = static_cast<int>(i);
                    break;
                }
            if (piv < 0) return false;
            u64 inv = 1;
            for (u64 e = p - 2, b = v[piv]; e; e >>= 1, b = b * b % p)
                if (e & 1) inv = inv * b % p;
            for (auto& c : v) c = c * inv % p;
            for (auto& [piv2, r] : rows) {
                if (!r[piv]) continue;
                u64 f = r[piv];
                for (size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + (p - f) * v[i]) % p;
            }
            rows.emplace_back(piv, std::move(v));
            return true;
        }
    };
    Echelon level{p, {}};
    for (int g = 1; g < n; ++g) {
        std::vector<u64> v(n, 0);
        v[g] = 1;
        v[0] = p - 1;
        level.insert(std::move(v));
    }
    int N = 1;
    while (!level.rows.empty()) {
        Echelon next{p, {}};
        for (const auto& [piv, b] : level.rows)
            for (int s : gens) {
                // b * (s - 1)
                std::vector<u64> v(n, 0);
                for (int g = 0; g < n; ++g) {
                    if (!b[g]) continue;
                    int gs = C.mul(g, s);
                    v[gs] = (v[gs] + b[g]) % p;
                    v[g] = (v[g] + p - b[g]) % p;
                }
                next.insert(std::move(v));
            }
        level = std::move(next);
        ++N;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[{key, p}] = N;
    return N;
}

int log_series_length(int N, u64 p, int W) {
    // last n with floor(n/N) - floor(log_p n) < W; beyond it every term is divisible by p^W
    int last = 1;
    const int limit = N * (W + 8 * floor_log(p, static_cast<u64>(N) * (W + 8)) + 16);
    for (int n = 1; n <= limit; ++n)
        if (n / N - floor_log(p, n) < W) last = n;
    return last;
}

ScaledApproximant log_one_plus(const GroupRing& ring, const ConjModule& conj, const Elem& v, int N) {
    const Zmod& R = ring.coeffs();
    const u64 p = R.p();
    if (R.val(ring.augment(v)) < 1) throw InvalidArgument("log_one_plus needs v in the radical");
    const int W = R.m();
    const int n_max = log_series_length(N, p, W);
    const int S = floor_log(p, n_max);
    if (S >= W) throw BoundExceeded("log series needs more working precision");
    std::vector<u64> payload(conj.size(), 0);
    Elem power = v;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) power = ring.mul(power, v);
        const int vn = valuation(n, p);
        u64 unit = static_cast<u64>(n);
        for (int i = 0; i < vn; ++i) unit /= p;
        u64 coef = R.mul(ipow(p, static_cast<unsigned>(S - vn)), R.inv(unit));
        if (n % 2 == 0) coef = R.neg(coef);
        auto cls = conj.project(power);
        for (int c = 0; c < conj.size(); ++c)
            if (cls[c]) payload[c] = R.add(payload[c], R.mul(cls[c], coef));
    }
    return ScaledApproximant(R, payload, S);
}

Elem log_p_ideal(const GroupRing& ring, const Elem& x) {
    const Zmod& R = ring.coeffs();
    const u64 p = R.p();
    const int W = R.m();
    Elem z = ring.sub(x, ring.one());
    for (u64 c : z)
        if (R.val(c) < 1) throw IntegralityFailure("logarithm argument is not congruent to 1 mod p");
    Elem w(z.size());
    for (size_t i = 0; i < z.size(); ++i) w[i] = z[i] / p;
    Elem acc = ring.zero();
    Elem power = ring.one();
    for (int n = 1;; ++n) {
        const int vn = valuation(n, p);
        if (n - floor_log(p, n) >= W && n > 1) break;
        power = ring.mul(power, w);
        u64 unit = static_cast<u64>(n);
        for (int i = 0; i < vn; ++i) unit /= p;
        if (n - vn >= W) continue;
        u64 coef = R.mul(ipow(p, static_cast<unsigned>(n - vn)), R.inv(unit));
        if (n % 2 == 0) coef = R.neg(coef);
        acc = ring.add(acc, ring.scale(power, coef));
    }
    return acc;
}

Elem exp_p_ideal(const GroupRing& ring, const Elem& y) {
    const Zmod& R = ring.coeffs();
    const u64 p = R.p();
    const int W = R.m();
    for (u64 c : y)
        if (R.val(c) < 1) throw InvalidArgument("exponential argument is not divisible by p");
    Elem t(y.size());
    for (size_t i = 0; i < y.size(); ++i) t[i] = y[i] / p;
    Elem acc = ring.one();
    Elem power = ring.one();
    int vfact = 0;       // v_p(n!)
    u64 unit_fact = 1;   // prime-to-p part of n! mod p^W
    for (int n = 1;; ++n) {
        int vn = valuation(n, p);
        vfact += vn;
        u64 u = static_cast<u64>(n);
        for (int i = 0; i < vn; ++i) u /= p;
        unit_fact = R.mul(unit_fact, u % R.modulus());
        // n - v_p(n!) >= n (p-2)/(p-1) grows without bound
        if (n - vfact >= W && n * static_cast<int>(p - 2) >= W * static_cast<int>(p - 1) + static_cast<int>(p)) break;
        power = ring.mul(power, t);
        if (n - vfact >= W) continue;
        u64 coef = R.mul(ipow(p, static_cast<unsigned>(n - vfact)), R.inv(unit_fact));
        acc = ring.add(acc, ring.scale(power, coef));
    }
    return acc;
}

int integral_log_output_precision(const LevelAlgebra& A, int W) {
    const int N = radical_nilpotency_index(A.level().group(), A.p());
    return W - 1 - floor_log(A.p(), integral_log_cutoff(N, A.p(), W));
}

int integral_log_working_precision(const LevelAlgebra& A, int digits) {
    int W = digits + 1;
    while (integral_log_output_precision(A, W) < digits) ++W;
    return W;
}

ScaledApproximant integral_log(const LevelAlgebra& A, const Elem& x) {
    const GroupRing& ring = A.ring();
    const ConjModule& conj = A.conj();
    const Zmod& R = A.coeffs();
    const u64 p = A.p();
    const int W = R.m();
    const int N = radical_nilpotency_index(ring.group(), p);
    const int K = integral_log_cutoff(N, p, W);
    const int out_prec = W - 1 - floor_log(p, K);
    if (out_prec < 1) throw BoundExceeded("integral logarithm needs more working precision");

    u64 c = ring.augment(x);
    u64 w = teichmuller(R, c);
    Elem y = ring.scale(x, R.inv(w));
    Elem v = ring.sub(ring.one(), y);

    // [v^i] for i = 1..pK
    const int top = static_cast<int>(p) * K;
    std::vector<std::vector<u64>> cls(top + 1);
    Elem power = ring.one();
    for (int i = 1; i <= top; ++i) {
        power = ring.mul(power, v);
        cls[i] = conj.project(power);
    }
    const u64 q_out = ipow(p, static_cast<unsigned>(out_prec));
    std::vector<u64> acc(conj.size(), 0);
    for (int i = 1; i <= top; ++i) {
        if (i % static_cast<int>(p) == 0) continue;
        u64 inv = R.inv(static_cast<u64>(i) % R.modulus());
        for (int cc = 0; cc < conj.size(); ++cc) acc[cc] = R.sub(acc[cc], R.mul(cls[i][cc], inv));
    }
    const Zmod Rout(p, out_prec);
    auto out = reduce_all(acc, q_out);
    for (int k = 1; k <= K; ++k) {
        const int s = 1 + valuation(k, p);
        auto d = conj_sub(R, cls[static_cast<size_t>(p) * k], conj.phi(cls[k]));
        auto quotient = exact_shift(R, d, s, "integral log term");
        u64 unit = static_cast<u64>(k);
        while (unit % p == 0) unit /= p;
        u64 inv = Rout.inv(unit % Rout.modulus());
        for (int cc = 0; cc < conj.size(); ++cc) out[cc] = Rout.sub(out[cc], Rout.mul(quotient[cc] % q_out, inv));
    }
    return ScaledApproximant(Rout, out, 0);
}

ScaledApproximant integral_log_by_powers(const LevelAlgebra& A, const Elem& x) {
    const GroupRing& ring = A.ring();
    const ConjModule& conj = A.conj();
    const Zmod& R = A.coeffs();
    const u64 p = A.p();
    const int W = R.m();
    const int N = radical_nilpotency_index(ring.group(), p);
    int r = 0;
    while (ipow(p, static_cast<unsigned>(r)) < static_cast<u64>(N)) ++r;
    const int out_prec = W - 1 - r;
    if (out_prec < 1) throw BoundExceeded("integral logarithm needs more working precision");
    u64 w = teichmuller(R, ring.augment(x));
    Elem y = ring.pow(ring.scale(x, R.inv(w)), ipow(p, static_cast<unsigned>(r)));
    Elem l = log_p_ideal(ring, y);
    auto cl = conj.project(l);
    auto phil = exact_shift(R, conj.phi(cl), 1, "phi of log");
    const Zmod R1(p, W - 1);
    std::vector<u64> Ly(cl.size());
    for (size_t i = 0; i < cl.size(); ++i) Ly[i] = R1.sub(cl[i] % R1.modulus(), phil[i] % R1.modulus());
    auto Lx = exact_shift(R1, Ly, r, "integral log by powers");
    return ScaledApproximant(Zmod(p, out_prec), Lx, 0);
}

int omega_to_ab(const LevelAlgebra& A, const ScaledApproximant& a) {
    if (a.scale() != 0) throw IntegralityFailure("omega needs an integral conjugacy-module element");
    const auto& top = A.lattice().at(A.lattice().whole()).ab;
    const FiniteGroup& ab = *top.group;
    u64 exponent = 1;
    for (int g = 0; g < ab.size(); ++g) exponent = std::max<u64>(exponent, static_cast<u64>(ab.order_of(g)));
    if (a.ring().modulus() % exponent != 0)
        throw BoundExceeded("precision too low to exponentiate in the abelianized group");
    int acc = 0;
    for (int c = 0; c < A.conj().size(); ++c) {
        u64 e = a.payload()[c] % exponent;
        if (!e) continue;
        acc = ab.mul(acc, ab.pow(top.project(A.conj().rep(c)), static_cast<i64>(e)));
    }
    return acc;
}

// ------------------------------------------------------------------ u, v, calL

Tuple alpha_tuple(const LevelAlgebra& A, const Tuple& x) {
    Tuple out;
    for (int P = 0; P < A.lattice().count(); ++P) out.push_back(A.alpha(P, x[P]));
    return out;
}

Elem u_map(const LevelAlgebra& A, int P, const Tuple& x) {
    const auto& lat = A.lattice();
    const auto& d = lat.at(P);
    const GroupRing& ring = A.sub_ring(P);
    Elem acc = ring.one();
    for (int Q : lat.cyclic_subgroups()) {
        const auto& e = lat.at(Q);
        if (d.cyclic) {
            if (e.pth_power != P || Q == P) continue;
            acc = ring.mul(acc, A.phi(Q, P, x[Q]));
        } else {
            if (!lat.contains(P, e.pth_power)) continue;
            acc = ring.mul(acc, ring.pow(A.phi(Q, P, x[Q]), static_cast<u64>(e.order())));
        }
    }
    return acc;
}

ScaledApproximant v_map(const LevelAlgebra& A, int P, const Tuple& a) {
    const auto& lat = A.lattice();
    const auto& d = lat.at(P);
    const GroupRing& ring = A.sub_ring(P);
    const Zmod& R = A.coeffs();
    const u64 p = A.p();
    if (d.cyclic) {
        Elem acc = ring.zero();
        for (int Q : lat.cyclic_subgroups()) {
            const auto& e = lat.at(Q);
            if (e.pth_power != P || Q == P) continue;
            acc = ring.add(acc, A.phi(Q, P, a[Q]));
        }
        return ScaledApproximant(R, ring.scale(acc, p % R.modulus()), 0);
    }
    // weights [Q : Q^p] / [P : Q^p]; the largest denominator sets the scale
    int S = 0;
    for (int Q : lat.cyclic_subgroups()) {
        const auto& e = lat.at(Q);
        if (!lat.contains(P, e.pth_power)) continue;
        S = std::max(S, valuation(d.order() / lat.at(e.pth_power).order(), p));
    }
    Elem payload = ring.zero();
    for (int Q : lat.cyclic_subgroups()) {
        const auto& e = lat.at(Q);
        if (!lat.contains(P, e.pth_power)) continue;
        int num = valuation(e.order() / lat.at(e.pth_power).order(), p);
        int den = valuation(d.order() / lat.at(e.pth_power).order(), p);
        u64 w = ipow(p, static_cast<unsigned>(num + S - den));
        payload = ring.add(payload, ring.scale(A.phi(Q, P, a[Q]), w % R.modulus()));
    }
    return ScaledApproximant(R, payload, S);
}

Elem divide_by_p_power(const Zmod& R, const Elem& x, int k) { return exact_shift(R, x, k, "exact division"); }

LogTuple calL(const LevelAlgebra& A, const Tuple& x) {
    const auto& lat = A.lattice();
    const u64 p = A.p();
    const int W = A.precision();
    Tuple ax = alpha_tuple(A, x);
    std::vector<Elem> raw;
    std::vector<int> shifts;
    for (int P = 0; P < lat.count(); ++P) {
        const auto& d = lat.at(P);
        const GroupRing& ring = A.sub_ring(P);
        Elem u = u_map(A, P, ax);
        Elem num;
        int k;
        if (!d.cyclic) {
            num = ring.pow(ax[P], p * static_cast<u64>(d.order()));
            k = 2 + valuation(d.order(), p);
        } else if (d.order() > 1) {
            num = ax[P];
            k = 1;
        } else {
            num = ax[P];
            u = ring.mul(u, A.phi(P, P, x[P]));
            k = 1;
        }
        Elem ratio = ring.mul(num, ring.invert_unit(u));
        Elem l = log_p_ideal(ring, ratio);
        raw.push_back(exact_shift(A.coeffs(), l, k, "logarithmic map"));
        shifts.push_back(k);
    }
    LogTuple out;
    out.precision = W - *std::max_element(shifts.begin(), shifts.end());
    if (out.precision < 1) throw BoundExceeded("working precision too low for the logarithmic map");
    const u64 q = ipow(p, static_cast<unsigned>(out.precision));
    for (auto& r : raw) out.values.push_back(reduce_all(r, q));
    return out;
}

ScaledApproximant calL_top_closed_form(const LevelAlgebra& A, const Elem& x) {
    const int G = A.lattice().whole();
    const GroupRing& ring = A.sub_ring(G);
    Elem ratio = ring.mul(ring.pow(x, A.p()), ring.invert_unit(A.phi(G, G, x)));
    Elem l = log_p_ideal(ring, ratio);
    Elem v = exact_shift(A.coeffs(), l, 1, "closed form");
    return ScaledApproximant(Zmod(A.p(), A.precision() - 1), v, 0);
}

}  // namespace iwasawa
