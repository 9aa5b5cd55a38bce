#include "iwasawa/groupring.hpp"

#include <algorithm>

namespace iwasawa {

// ------------------------------------------------------------------ GroupRing

GroupRing::Elem GroupRing::basis(int g, u64 c) const {
    Elem e = zero();
    e[g] = c % R_.modulus();
    return e;
}

GroupRing::Elem GroupRing::add(const Elem& a, const Elem& b) const {
    Elem c(size());
    for (int i = 0; i < size(); ++i) c[i] = R_.add(a[i], b[i]);
    return c;
}
GroupRing::Elem GroupRing::sub(const Elem& a, const Elem& b) const {
    Elem c(size());
    for (int i = 0; i < size(); ++i) c[i] = R_.sub(a[i], b[i]);
    return c;
}
GroupRing::Elem GroupRing::neg(const Elem& a) const {
    Elem c(size());
    for (int i = 0; i < size(); ++i) c[i] = R_.neg(a[i]);
    return c;
}
GroupRing::Elem GroupRing::scale(const Elem& a, u64 s) const {
    Elem c(size());
    for (int i = 0; i < size(); ++i) c[i] = R_.mul(a[i], s);
    return c;
}

GroupRing::Elem GroupRing::mul(const Elem& a, const Elem& b) const {
    const int n = size();
    const u64 q = R_.modulus();
    // each partial product is reduced below q, so n of them fit in 64 bits (q < 2^40, n < 2^12)
    std::vector<u64> acc(n, 0);
    std::vector<int> nzb;
    for (int j = 0; j < n; ++j)
        if (b[j]) nzb.push_back(j);
    for (int i = 0; i < n; ++i) {
        const u64 ai = a[i];
        if (!ai) continue;
        for (int j : nzb) acc[g_->mul(i, j)] += static_cast<u64>((static_cast<unsigned __int128>(ai) * b[j]) % q);
    }
    for (auto& v : acc) v %= q;
    return acc;
}

GroupRing::Elem GroupRing::pow(const Elem& a, u64 e) const {
    Elem r = one();
    Elem base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return r;
}

GroupRing::Elem GroupRing::conjugate(const Elem& a, int g) const {
    Elem c = zero();
    for (int h = 0; h < size(); ++h)
        if (a[h]) c[g_->conj(g, h)] = a[h];
    return c;
}

u64 GroupRing::augment(const Elem& a) const {
    u64 s = 0;
    for (u64 v : a) s = R_.add(s, v);
    return s;
}

GroupRing::Elem GroupRing::invert_unit(const Elem& a) const {
    if (!is_unit(a)) throw NonUnit("group ring element has non-unit augmentation");
    const int n = size();
    // column g holds a * g, so M y = a * y
    Matrix M(n, n);
    for (int h = 0; h < n; ++h) {
        if (!a[h]) continue;
        for (int g = 0; g < n; ++g) M.at(g_->mul(h, g), g) = R_.add(M.at(g_->mul(h, g), g), a[h]);
    }
    std::vector<u64> rhs(n, 0);
    rhs[0] = 1 % R_.modulus();
    return solve_invertible(R_, std::move(M), std::move(rhs));
}

GroupRing::Elem GroupRing::change_precision(const Elem& a, const GroupRing& target) const {
    Elem c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] % target.coeffs().modulus();
    return c;
}

bool GroupRing::equal_mod(const Elem& a, const Elem& b, int digits) const {
    const u64 q = ipow(R_.p(), static_cast<unsigned>(std::min(digits, R_.m())));
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] % q != b[i] % q) return false;
    return true;
}

GroupRing::Elem push_forward(const GroupRing& src, const GroupRing& dst, const GroupRing::Elem& x,
                             const std::vector<int>& image) {
    GroupRing::Elem y = dst.zero();
    const Zmod& R = dst.coeffs();
    for (int g = 0; g < src.size(); ++g) {
        if (!x[g] || image[g] < 0) continue;
        y[image[g]] = R.add(y[image[g]], x[g] % R.modulus());
    }
    return y;
}

// ------------------------------------------------------------------ matrices over group rings

RingMatrix right_multiplication_matrix(const GroupRing& ambient, const std::vector<int>& sub,
                                       const std::vector<int>& reps, const std::vector<int>& hom,
                                       const GroupRing& target, const GroupRing::Elem& x) {
    const FiniteGroup& A = ambient.group();
    const int n = static_cast<int>(reps.size());
    if (static_cast<size_t>(n) * sub.size() != static_cast<size_t>(A.size()))
        throw InvalidArgument("coset representatives do not match the subgroup index");
    std::vector<int> coset(A.size(), -1);
    for (int k = 0; k < n; ++k)
        for (int s : sub) {
            int y = A.mul(s, reps[k]);
            if (coset[y] >= 0) throw InvalidArgument("coset representatives are not distinct mod the subgroup");
            coset[y] = k;
        }
    RingMatrix M;
    M.n = n;
    M.entries.assign(static_cast<size_t>(n) * n, target.zero());
    const Zmod& R = target.coeffs();
    for (int i = 0; i < n; ++i)
        for (int g = 0; g < A.size(); ++g) {
            if (!x[g]) continue;
            int y = A.mul(reps[i], g);
            int k = coset[y];
            int u = A.mul(y, A.inv(reps[k]));
            int t = hom[u];
            if (t < 0) throw InvalidArgument("homomorphism undefined on the subgroup");
            auto& e = M.at(i, k);
            e[t] = R.add(e[t], x[g] % R.modulus());
        }
    return M;
}

GroupRing::Elem determinant(const GroupRing& ring, RingMatrix M) {
    const int n = M.n;
    GroupRing::Elem det = ring.one();
    for (int k = 0; k < n; ++k) {
        int pr = -1;
        for (int r = k; r < n; ++r)
            if (ring.is_unit(M.at(r, k))) {
                pr = r;
                break;
            }
        if (pr < 0) throw NonUnit("matrix over the group ring has no unit pivot");
        if (pr != k) {
            for (int c = 0; c < n; ++c) std::swap(M.at(k, c), M.at(pr, c));
            det = ring.neg(det);
        }
        det = ring.mul(det, M.at(k, k));
        GroupRing::Elem inv = ring.invert_unit(M.at(k, k));
        for (int r = k + 1; r < n; ++r) {
            bool zero = std::all_of(M.at(r, k).begin(), M.at(r, k).end(), [](u64 v) { return v == 0; });
            if (zero) continue;
            GroupRing::Elem f = ring.mul(M.at(r, k), inv);
            for (int c = k + 1; c < n; ++c) M.at(r, c) = ring.sub(M.at(r, c), ring.mul(f, M.at(k, c)));
        }
    }
    return det;
}

GroupRing::Elem determinant_division_free(const GroupRing& ring, const RingMatrix& A) {
    const int n = A.n;
    if (n == 0) return ring.one();
    using E = GroupRing::Elem;
    // Berkowitz: C holds the characteristic polynomial of the leading r x r block, highest degree first
    std::vector<E> C{ring.one(), ring.neg(A.at(0, 0))};
    for (int r = 1; r < n; ++r) {
        // t_0 = 1, t_1 = -a_rr, t_{k+2} = -R M^k S
        std::vector<E> t(r + 2, ring.zero());
        t[0] = ring.one();
        t[1] = ring.neg(A.at(r, r));
        std::vector<E> v(r);  // M^k S
        for (int i = 0; i < r; ++i) v[i] = A.at(i, r);
        for (int k = 0; k < r; ++k) {
            E dot = ring.zero();
            for (int i = 0; i < r; ++i) dot = ring.add(dot, ring.mul(A.at(r, i), v[i]));
            t[k + 2] = ring.neg(dot);
            if (k + 1 < r) {
                std::vector<E> w(r, ring.zero());
                for (int i = 0; i < r; ++i)
                    for (int l = 0; l < r; ++l) w[i] = ring.add(w[i], ring.mul(A.at(i, l), v[l]));
                v = std::move(w);
            }
        }
        std::vector<E> D(r + 2, ring.zero());
        for (int i = 0; i < r + 2; ++i)
            for (int j = 0; j <= std::min(i, r); ++j) D[i] = ring.add(D[i], ring.mul(t[i - j], C[j]));
        C = std::move(D);
    }
    return (n % 2 == 0) ? C[n] : ring.neg(C[n]);
}

GroupRing::Elem matrix_trace(const GroupRing& ring, const RingMatrix& M) {
    GroupRing::Elem s = ring.zero();
    for (int i = 0; i < M.n; ++i) s = ring.add(s, M.at(i, i));
    return s;
}

GroupRing::Elem relative_norm(const GroupRing& ambient, const std::vector<int>& sub, const std::vector<int>& hom,
                              const GroupRing& target, const GroupRing::Elem& x, const std::vector<int>* reps) {
    std::vector<int> all(ambient.size());
    for (int i = 0; i < ambient.size(); ++i) all[i] = i;
    std::vector<int> own;
    if (!reps) {
        own = right_coset_reps(ambient.group(), all, sub);
        reps = &own;
    }
    return determinant(target, right_multiplication_matrix(ambient, sub, *reps, hom, target, x));
}

GroupRing::Elem relative_trace(const GroupRing& ambient, const std::vector<int>& sub, const std::vector<int>& hom,
                               const GroupRing& target, const GroupRing::Elem& x) {
    std::vector<int> all(ambient.size());
    for (int i = 0; i < ambient.size(); ++i) all[i] = i;
    auto reps = right_coset_reps(ambient.group(), all, sub);
    return matrix_trace(target, right_multiplication_matrix(ambient, sub, reps, hom, target, x));
}

// ------------------------------------------------------------------ ConjModule

ConjModule::ConjModule(std::shared_ptr<const FiniteGroup> g, const Zmod& R) : g_(std::move(g)), R_(R) {
    classes_ = g_->conjugacy_classes();
    class_of_.assign(g_->size(), -1);
    for (size_t c = 0; c < classes_.size(); ++c)
        for (int x : classes_[c]) class_of_[x] = static_cast<int>(c);
}

ConjModule ConjModule::with_precision(int m) const {
    ConjModule c = *this;
    c.R_ = Zmod(R_.p(), m);
    return c;
}

ConjModule::Elem ConjModule::basis(int c, u64 v) const {
    Elem e = zero();
    e[c] = v % R_.modulus();
    return e;
}

ConjModule::Elem ConjModule::project(const GroupRing::Elem& x) const {
    Elem e = zero();
    for (int g = 0; g < g_->size(); ++g)
        if (x[g]) e[class_of_[g]] = R_.add(e[class_of_[g]], x[g] % R_.modulus());
    return e;
}

ConjModule::Elem ConjModule::add(const Elem& a, const Elem& b) const {
    Elem c(size());
    for (int i = 0; i < size(); ++i) c[i] = R_.add(a[i], b[i]);
    return c;
}
ConjModule::Elem ConjModule::sub(const Elem& a, const Elem& b) const {
    Elem c(size());
    for (int i = 0; i < size(); ++i) c[i] = R_.sub(a[i], b[i]);
    return c;
}

ConjModule::Elem ConjModule::phi(const Elem& a) const {
    Elem e = zero();
    for (int c = 0; c < size(); ++c) {
        if (!a[c]) continue;
        int d = class_of_[g_->pow(rep(c), static_cast<i64>(R_.p()))];
        e[d] = R_.add(e[d], a[c]);
    }
    return e;
}

// ------------------------------------------------------------------ cyclotomic twists

CyclotomicGroupRing::Elem CyclotomicGroupRing::embed(const GroupRing::Elem& x) const {
    Elem e(g_->size());
    for (int g = 0; g < g_->size(); ++g) e[g] = C_.scalar(x[g]);
    return e;
}

CyclotomicGroupRing::Elem CyclotomicGroupRing::twist(const GroupRing::Elem& x, const std::vector<int>& chi, int k) const {
    Elem e(g_->size());
    for (int g = 0; g < g_->size(); ++g) e[g] = C_.mul(C_.scalar(x[g]), C_.root_power(static_cast<long>(k) * chi[g]));
    return e;
}

CyclotomicGroupRing::Elem CyclotomicGroupRing::one() const {
    Elem e(g_->size(), C_.zero());
    e[0] = C_.scalar(1);
    return e;
}

CyclotomicGroupRing::Elem CyclotomicGroupRing::mul(const Elem& a, const Elem& b) const {
    const int n = g_->size();
    Elem c(n, C_.zero());
    for (int i = 0; i < n; ++i) {
        bool za = std::all_of(a[i].begin(), a[i].end(), [](u64 v) { return v == 0; });
        if (za) continue;
        for (int j = 0; j < n; ++j) {
            bool zb = std::all_of(b[j].begin(), b[j].end(), [](u64 v) { return v == 0; });
            if (zb) continue;
            int k = g_->mul(i, j);
            c[k] = C_.add(c[k], C_.mul(a[i], b[j]));
        }
    }
    return c;
}

std::optional<GroupRing::Elem> CyclotomicGroupRing::descend(const Elem& a) const {
    GroupRing::Elem x(a.size());
    for (size_t g = 0; g < a.size(); ++g) {
        if (!C_.is_scalar(a[g])) return std::nullopt;
        x[g] = a[g][0];
    }
    return x;
}

std::vector<int> index_p_character(const FiniteGroup& A, const std::vector<int>& sub, u64 p) {
    if (static_cast<u64>(sub.size()) * p != static_cast<u64>(A.size())) throw InvalidArgument("character needs an index-p subgroup");
    std::vector<char> in(A.size(), 0);
    for (int s : sub) in[s] = 1;
    int g0 = -1;
    for (int g = 0; g < A.size(); ++g)
        if (!in[g]) {
            g0 = g;
            break;
        }
    std::vector<int> chi(A.size(), -1);
    int y = 0;
    for (u64 k = 0; k < p; ++k) {
        for (int s : sub) chi[A.mul(y, s)] = static_cast<int>(k);
        y = A.mul(y, g0);
    }
    for (int v : chi)
        if (v < 0) throw InvalidArgument("subgroup does not have index p with cyclic quotient");
    return chi;
}

CyclotomicGroupRing::Elem omega_product(const GroupRing& ring, const std::vector<int>& chi, const GroupRing::Elem& x) {
    CyclotomicGroupRing C(ring.group_ptr(), ring.coeffs());
    CyclotomicGroupRing::Elem acc = C.one();
    for (u64 k = 0; k < ring.coeffs().p(); ++k) acc = C.mul(acc, C.twist(x, chi, static_cast<int>(k)));
    return acc;
}

GroupRing::Elem alpha_twisted(const GroupRing& ring, const std::vector<int>& kernel, const GroupRing::Elem& x) {
    std::vector<int> hom(ring.size(), -1);
    for (int s : kernel) hom[s] = s;
    GroupRing::Elem N = relative_norm(ring, kernel, hom, ring, x);
    return ring.mul(ring.pow(x, ring.coeffs().p()), ring.invert_unit(N));
}

// ------------------------------------------------------------------ trace ideals

Matrix TraceIdeal::build(const GroupRing& ring, const std::vector<std::vector<int>>& conj, int p_power,
                         std::vector<GroupRing::Elem>& gens) {
    const int n = ring.size();
    const Zmod& R = ring.coeffs();
    const u64 scale = p_power >= R.m() ? 0 : ipow(R.p(), static_cast<unsigned>(p_power));
    Matrix M(n, n);
    gens.clear();
    for (int b = 0; b < n; ++b) {
        GroupRing::Elem g = ring.zero();
        for (const auto& c : conj) g[c[b]] = R.add(g[c[b]], scale);
        M.set_column(b, g);
        gens.push_back(std::move(g));
    }
    return M;
}

TraceIdeal::TraceIdeal(const GroupRing& ring, const std::vector<std::vector<int>>& conj, int p_power)
    : ring_(ring), conj_(conj), span_(ring.coeffs(), build(ring, conj, p_power, gens_)) {}

GroupRing::Elem TraceIdeal::apply(const GroupRing::Elem& x) const {
    GroupRing::Elem y = ring_.zero();
    for (const auto& c : conj_) y = ring_.add(y, push_forward(ring_, ring_, x, c));
    return y;
}

}  // namespace iwasawa
