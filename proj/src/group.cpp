#include "iwasawa/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace iwasawa {

// ------------------------------------------------------------------ FiniteGroup

FiniteGroup::FiniteGroup(int order, std::vector<int> table) : n_(order), table_(std::move(table)) {
    if (n_ < 1 || table_.size() != static_cast<size_t>(n_) * n_) throw InvalidArgument("malformed multiplication table");
    for (int v : table_)
        if (v < 0 || v >= n_) throw InvalidArgument("multiplication table entry out of range");
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == 0) {
                inv_[a] = b;
                break;
            }
    for (int a = 0; a < n_; ++a)
        if (inv_[a] < 0) throw InvalidArgument("element without inverse in multiplication table");
}

int FiniteGroup::pow(int a, i64 k) const {
    if (k < 0) {
        a = inv_[a];
        k = -k;
    }
    int r = 0;
    while (k) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

int FiniteGroup::order_of(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
    std::vector<char> in(n_, 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (size_t i = 0; i < elems.size(); ++i) {
        for (int g : gens) {
            int y = mul(elems[i], g);
            if (!in[y]) {
                in[y] = 1;
                elems.push_back(y);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& s) const {
    if (s.empty() || s.front() != 0) return false;
    std::vector<char> in(n_, 0);
    for (int x : s) in[x] = 1;
    for (int a : s)
        for (int b : s)
            if (!in[mul(a, b)]) return false;
    return true;
}

std::vector<int> FiniteGroup::commutator_subgroup(const std::vector<int>& sub) const {
    std::set<int> comms;
    for (int a : sub)
        for (int b : sub) comms.insert(commutator(a, b));
    return closure(std::vector<int>(comms.begin(), comms.end()));
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
    std::vector<char> seen(n_, 0);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < n_; ++x) {
        if (seen[x]) continue;
        std::set<int> orbit;
        for (int g = 0; g < n_; ++g) orbit.insert(conj(g, x));
        for (int y : orbit) seen[y] = 1;
        out.emplace_back(orbit.begin(), orbit.end());
    }
    return out;
}

bool FiniteGroup::verify_axioms() const {
    for (int a = 0; a < n_; ++a) {
        if (mul(0, a) != a || mul(a, 0) != a) return false;
        if (mul(a, inv_[a]) != 0 || mul(inv_[a], a) != 0) return false;
        for (int b = 0; b < n_; ++b) {
            int ab = mul(a, b);
            for (int c = 0; c < n_; ++c)
                if (mul(ab, c) != mul(a, mul(b, c))) return false;
        }
    }
    return true;
}

// ------------------------------------------------------------------ seeds

namespace {

// direct product of cyclic groups Z/n_0 x Z/n_1 x ..., mixed radix with the first factor fastest
std::vector<int> abelian_table(const std::vector<int>& moduli, int& order) {
    order = 1;
    for (int n : moduli) order *= n;
    std::vector<int> table(static_cast<size_t>(order) * order);
    auto digits = [&](int x) {
        std::vector<int> d(moduli.size());
        for (size_t i = 0; i < moduli.size(); ++i) {
            d[i] = x % moduli[i];
            x /= moduli[i];
        }
        return d;
    };
    for (int a = 0; a < order; ++a) {
        auto da = digits(a);
        for (int b = 0; b < order; ++b) {
            auto db = digits(b);
            int idx = 0, scale = 1;
            for (size_t i = 0; i < moduli.size(); ++i) {
                idx += ((da[i] + db[i]) % moduli[i]) * scale;
                scale *= moduli[i];
            }
            table[static_cast<size_t>(a) * order + b] = idx;
        }
    }
    return table;
}

std::vector<int> identity_perm(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

// "p^n" or a bare number; returns (p, n).  A bare number must be a prime power.
std::pair<u64, int> parse_prime_power(const std::string& s, int col) {
    auto fail = [&](const std::string& why) { throw ParseError(why + ": '" + s + "'", 1, col); };
    auto to_num = [&](const std::string& t) -> u64 {
        if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) fail("expected a number");
        if (t.size() > 12) fail("number too large");
        return std::stoull(t);
    };
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        u64 p = to_num(s.substr(0, caret));
        u64 n = to_num(s.substr(caret + 1));
        if (!is_prime(p)) fail("base is not prime");
        return {p, static_cast<int>(n)};
    }
    u64 v = to_num(s);
    if (v < 2) fail("expected a prime power");
    for (u64 p = 2; p <= v; ++p) {
        if (v % p) continue;
        int n = 0;
        u64 w = v;
        while (w % p == 0) {
            w /= p;
            ++n;
        }
        if (w != 1) fail("expected a prime power");
        return {p, n};
    }
    fail("expected a prime power");
    return {0, 0};
}

GroupSeed parse_semidirect(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    GroupSeed s;
    s.name = "semidirect";
    bool have_p = false, have_e = false, have_order = false, have_alpha = false;
    int table_rows_left = -1;
    bool header_seen = false;

    auto ints_of = [&](const std::string& body, int first_col) {
        std::vector<std::pair<long long, int>> out;
        size_t i = 0;
        while (i < body.size()) {
            if (std::isspace(static_cast<unsigned char>(body[i]))) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
            std::string tok = body.substr(i, j - i);
            if (!std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 9)
                throw ParseError("expected a nonnegative integer, got '" + tok + "'", lineno, first_col + static_cast<int>(i));
            out.emplace_back(std::stoll(tok), first_col + static_cast<int>(i));
            i = j;
        }
        return out;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        std::string body = line.substr(start);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
        const int col = static_cast<int>(start) + 1;

        if (!header_seen) {
            if (body != "semidirect") throw ParseError("expected 'semidirect'", lineno, col);
            header_seen = true;
            continue;
        }
        if (table_rows_left > 0) {
            auto row = ints_of(body, col);
            if (static_cast<int>(row.size()) != s.h_order)
                throw ParseError("table row must have " + std::to_string(s.h_order) + " entries", lineno, col);
            for (auto& [v, c] : row) {
                if (v >= s.h_order) throw ParseError("table entry out of range", lineno, c);
                s.h_table.push_back(static_cast<int>(v));
            }
            --table_rows_left;
            continue;
        }
        std::string key = body.substr(0, body.find_first_of(" \t"));
        std::string rest = body.size() > key.size() ? body.substr(key.size()) : "";
        const int rest_col = col + static_cast<int>(key.size());
        if (key == "prime" || key == "exponent" || key == "order") {
            auto v = ints_of(rest, rest_col);
            if (v.size() != 1) throw ParseError("'" + key + "' takes one integer", lineno, col);
            if (key == "prime") {
                s.p = static_cast<u64>(v[0].first);
                have_p = true;
            } else if (key == "exponent") {
                s.e = static_cast<int>(v[0].first);
                have_e = true;
            } else {
                s.h_order = static_cast<int>(v[0].first);
                if (s.h_order < 1 || s.h_order > kMaxQuotientOrder) throw ParseError("order out of range", lineno, v[0].second);
                have_order = true;
            }
        } else if (key == "table") {
            if (!have_order) throw ParseError("'order' must precede 'table'", lineno, col);
            if (!rest.empty() && rest.find_first_not_of(" \t") != std::string::npos)
                throw ParseError("'table' takes no arguments", lineno, rest_col);
            table_rows_left = s.h_order;
        } else if (key == "alpha") {
            if (!have_order) throw ParseError("'order' must precede 'alpha'", lineno, col);
            auto v = ints_of(rest, rest_col);
            if (static_cast<int>(v.size()) != s.h_order) throw ParseError("alpha must list " + std::to_string(s.h_order) + " images", lineno, col);
            for (auto& [x, c] : v) {
                if (x >= s.h_order) throw ParseError("alpha image out of range", lineno, c);
                s.alpha.push_back(static_cast<int>(x));
            }
            have_alpha = true;
        } else {
            throw ParseError("unknown key '" + key + "'", lineno, col);
        }
    }
    if (!header_seen) throw ParseError("empty group description", 1, 1);
    if (table_rows_left > 0) throw ParseError("table ended early", lineno, 1);
    if (!have_p || !have_e || !have_order || s.h_table.empty())
        throw ParseError("semidirect block needs prime, exponent, order and table", lineno, 1);
    if (!have_alpha) s.alpha = identity_perm(s.h_order);
    return s;
}

}  // namespace

GroupSeed parse_group_seed(const std::string& raw) {
    std::string text = raw;
    size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) throw ParseError("empty group description", 1, 1);
    if (text.compare(start, 10, "semidirect") == 0) {
        GroupSeed s = parse_semidirect(text);
        validate_seed(s);
        return s;
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    text = text.substr(start);
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("expected family:argument", 1, static_cast<int>(start) + 1);
    std::string family = text.substr(0, colon);
    std::string arg = text.substr(colon + 1);
    const int argcol = static_cast<int>(start + colon) + 2;
    auto [p, n] = parse_prime_power(arg, argcol);

    GroupSeed s;
    s.name = text;
    s.p = p;
    if (family == "trivial") {
        if (n != 1) throw ParseError("trivial takes a prime", 1, argcol);
        s.h_order = 1;
        s.h_table = {0};
        s.e = 0;
    } else if (family == "gamma") {
        s.h_order = 1;
        s.h_table = {0};
        s.e = n;
    } else if (family == "cyclic") {
        if (n < 1) throw ParseError("cyclic needs exponent >= 1", 1, argcol);
        s.h_table = abelian_table({static_cast<int>(ipow(p, static_cast<unsigned>(n)))}, s.h_order);
        s.e = 0;
    } else if (family == "elem-abelian") {
        if (n < 1) throw ParseError("elem-abelian needs rank >= 1", 1, argcol);
        s.h_table = abelian_table(std::vector<int>(n, static_cast<int>(p)), s.h_order);
        s.e = 0;
    } else if (family == "heisenberg") {
        if (n != 1) throw ParseError("heisenberg takes a prime", 1, argcol);
        s.h_table = abelian_table({static_cast<int>(p), static_cast<int>(p)}, s.h_order);
        // alpha(a, b) = (a + b, b), index a + p b
        s.alpha.resize(s.h_order);
        for (int b = 0; b < static_cast<int>(p); ++b)
            for (int a = 0; a < static_cast<int>(p); ++a) s.alpha[a + p * b] = static_cast<int>((a + b) % p + p * b);
        s.e = 1;
    } else {
        throw ParseError("unknown group family '" + family + "'", 1, static_cast<int>(start) + 1);
    }
    if (s.alpha.empty()) s.alpha = identity_perm(s.h_order);
    validate_seed(s);
    return s;
}

void validate_seed(const GroupSeed& s) {
    if (s.p == 2) throw InvalidArgument("p = 2 is not supported");
    if (!is_prime(s.p)) throw InvalidArgument("p must be an odd prime");
    if (s.e < 0 || s.e > 6) throw InvalidArgument("exponent e out of range");
    FiniteGroup h(s.h_order, s.h_table);  // validates shape and inverses
    if (!h.verify_axioms()) throw InvalidArgument("H table is not a group with identity 0");
    {
        int o = s.h_order;
        while (o % static_cast<int>(s.p) == 0) o /= static_cast<int>(s.p);
        if (o != 1) throw InvalidArgument("H must be a p-group");
    }
    if (static_cast<int>(s.alpha.size()) != s.h_order) throw InvalidArgument("alpha has the wrong length");
    std::vector<int> sorted = s.alpha;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_perm(s.h_order)) throw InvalidArgument("alpha is not a permutation");
    for (int a = 0; a < s.h_order; ++a)
        for (int b = 0; b < s.h_order; ++b)
            if (s.alpha[h.mul(a, b)] != h.mul(s.alpha[a], s.alpha[b])) throw InvalidArgument("alpha is not a homomorphism");
    // order of alpha must be exactly p^e
    auto apply_pow = [&](u64 k) {
        std::vector<int> r = identity_perm(s.h_order);
        for (u64 i = 0; i < k; ++i)
            for (auto& x : r) x = s.alpha[x];
        return r;
    };
    if (apply_pow(ipow(s.p, static_cast<unsigned>(s.e))) != identity_perm(s.h_order))
        throw InvalidArgument("alpha^{p^e} is not the identity");
    if (s.e > 0 && apply_pow(ipow(s.p, static_cast<unsigned>(s.e - 1))) == identity_perm(s.h_order))
        throw InvalidArgument("e is not minimal: alpha^{p^{e-1}} is already the identity");
}

// ------------------------------------------------------------------ subquotients

Subquotient make_subquotient(const FiniteGroup& amb, const std::vector<int>& members, const std::vector<int>& kernel) {
    Subquotient q;
    q.members = members;
    q.kernel = kernel;
    q.class_of.assign(amb.size(), -1);
    std::vector<char> in_a(amb.size(), 0), in_n(amb.size(), 0);
    for (int x : members) in_a[x] = 1;
    for (int x : kernel) {
        if (!in_a[x]) throw InvalidArgument("subquotient kernel is not inside the subgroup");
        in_n[x] = 1;
    }
    for (int a : members)
        for (int n : kernel)
            if (!in_n[amb.conj(a, n)]) throw InvalidArgument("subquotient kernel is not normal");
    for (int x : members) {
        if (q.class_of[x] >= 0) continue;
        int c = static_cast<int>(q.rep.size());
        q.rep.push_back(x);
        for (int n : kernel) q.class_of[amb.mul(x, n)] = c;
    }
    const int k = static_cast<int>(q.rep.size());
    std::vector<int> table(static_cast<size_t>(k) * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) table[static_cast<size_t>(a) * k + b] = q.class_of[amb.mul(q.rep[a], q.rep[b])];
    q.group = std::make_shared<const FiniteGroup>(k, std::move(table));
    return q;
}

// ------------------------------------------------------------------ level groups

LevelGroup::LevelGroup(GroupSeed seed, int j) : seed_(std::move(seed)), j_(j) {
    validate_seed(seed_);
    if (j < 0 || j > 8) throw InvalidArgument("level out of range");
    const u64 p = seed_.p;
    const u64 pe = ipow(p, static_cast<unsigned>(seed_.e));
    gamma_mod_ = ipow(p, static_cast<unsigned>(seed_.e + j));
    const int H = seed_.h_order;
    const u64 qorder = static_cast<u64>(H) * pe;
    const u64 border = static_cast<u64>(H) * gamma_mod_;
    if (qorder > static_cast<u64>(kMaxQuotientOrder)) throw BoundExceeded("quotient group exceeds the size bound");
    if (border > static_cast<u64>(kMaxLevelGroupOrder)) throw BoundExceeded("level group exceeds the size bound");
    FiniteGroup h(H, seed_.h_table);
    // alpha^a for a < p^e
    std::vector<std::vector<int>> apow(pe, identity_perm(H));
    for (u64 a = 1; a < pe; ++a)
        for (int x = 0; x < H; ++x) apow[a][x] = seed_.alpha[apow[a - 1][x]];

    auto build = [&](u64 mod) {
        const int n = static_cast<int>(H * mod);
        std::vector<int> t(static_cast<size_t>(n) * n);
        for (int h1 = 0; h1 < H; ++h1)
            for (u64 a1 = 0; a1 < mod; ++a1)
                for (int h2 = 0; h2 < H; ++h2)
                    for (u64 a2 = 0; a2 < mod; ++a2) {
                        int hh = h.mul(h1, apow[a1 % pe][h2]);
                        int x = h1 * static_cast<int>(mod) + static_cast<int>(a1);
                        int y = h2 * static_cast<int>(mod) + static_cast<int>(a2);
                        t[static_cast<size_t>(x) * n + y] = hh * static_cast<int>(mod) + static_cast<int>((a1 + a2) % mod);
                    }
        return std::make_shared<const FiniteGroup>(n, std::move(t));
    };
    big_ = build(gamma_mod_);
    quot_ = build(pe);
    to_quot_.resize(big_->size());
    for (int x = 0; x < big_->size(); ++x) {
        auto [hh, a] = coords(x);
        to_quot_[x] = hh * static_cast<int>(pe) + static_cast<int>(a % pe);
    }
    lift_.resize(quot_->size());
    for (int g = 0; g < quot_->size(); ++g) lift_[g] = element(g / static_cast<int>(pe), g % pe);
    for (u64 t = 0; t < ipow(p, static_cast<unsigned>(j)); ++t) zj_.push_back(element(0, pe * t));
}

int LevelGroup::reduce_to(const LevelGroup& lower, int x) const {
    auto [h, a] = coords(x);
    return lower.element(h, a % lower.gamma_order());
}

// ------------------------------------------------------------------ cosets and transfer

std::vector<int> left_coset_reps(const FiniteGroup& amb, const std::vector<int>& big, const std::vector<int>& sub) {
    std::vector<char> seen(amb.size(), 0);
    std::vector<int> reps;
    for (int x : big) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (int s : sub) seen[amb.mul(x, s)] = 1;
    }
    return reps;
}

std::vector<int> right_coset_reps(const FiniteGroup& amb, const std::vector<int>& big, const std::vector<int>& sub) {
    std::vector<char> seen(amb.size(), 0);
    std::vector<int> reps;
    for (int x : big) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (int s : sub) seen[amb.mul(s, x)] = 1;
    }
    return reps;
}

namespace {
// coset id of every element of `big` with respect to left cosets of `sub`
std::vector<int> left_coset_index(const FiniteGroup& amb, const std::vector<int>& reps, const std::vector<int>& sub) {
    std::vector<int> id(amb.size(), -1);
    for (size_t i = 0; i < reps.size(); ++i)
        for (int s : sub) id[amb.mul(reps[i], s)] = static_cast<int>(i);
    return id;
}
}  // namespace

int transfer(const FiniteGroup& amb, const std::vector<int>& big, const Subquotient& small_ab, int g) {
    const auto reps = left_coset_reps(amb, big, small_ab.members);
    const auto id = left_coset_index(amb, reps, small_ab.members);
    std::vector<char> visited(reps.size(), 0);
    const FiniteGroup& ab = *small_ab.group;
    int acc = 0;
    for (size_t i = 0; i < reps.size(); ++i) {
        if (visited[i]) continue;
        // follow the <g>-orbit of the coset x U; its length m is the least m with x^{-1} g^m x in U
        int x = reps[i];
        int m = 0;
        int cur = x;
        do {
            visited[id[cur]] = 1;
            cur = amb.mul(g, cur);
            ++m;
        } while (id[cur] != static_cast<int>(i));
        int h = amb.mul(amb.mul(amb.inv(x), amb.pow(g, m)), x);
        if (!small_ab.contains(h)) throw Error("transfer: cycle element left the subgroup");
        acc = ab.mul(acc, small_ab.project(h));
    }
    return acc;
}

int transfer_by_cosets(const FiniteGroup& amb, const std::vector<int>& big, const Subquotient& small_ab, int g) {
    const auto reps = left_coset_reps(amb, big, small_ab.members);
    const auto id = left_coset_index(amb, reps, small_ab.members);
    const FiniteGroup& ab = *small_ab.group;
    int acc = 0;
    for (int x : reps) {
        int gx = amb.mul(g, x);
        int y = reps[id[gx]];
        int h = amb.mul(amb.inv(y), gx);
        acc = ab.mul(acc, small_ab.project(h));
    }
    return acc;
}

// ------------------------------------------------------------------ subgroup lattice

std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> queue{{0}};
    found.insert({0});
    for (size_t i = 0; i < queue.size(); ++i) {
        const std::vector<int> s = queue[i];
        std::vector<char> in(g.size(), 0);
        for (int x : s) in[x] = 1;
        for (int x = 0; x < g.size(); ++x) {
            if (in[x]) continue;
            std::vector<int> gens = s;
            gens.push_back(x);
            auto c = g.closure(gens);
            if (found.insert(c).second) queue.push_back(std::move(c));
        }
    }
    std::vector<std::vector<int>> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

SubgroupLattice::SubgroupLattice(std::shared_ptr<const LevelGroup> level) : level_(std::move(level)) {
    const FiniteGroup& G = level_->quotient();
    const FiniteGroup& B = level_->group();
    const u64 p = level_->p();
    auto lists = enumerate_subgroups(G);
    for (size_t i = 0; i < lists.size(); ++i) lookup_[lists[i]] = static_cast<int>(i);

    for (size_t i = 0; i < lists.size(); ++i) {
        SubgroupDatum d;
        d.index = static_cast<int>(i);
        d.elements = lists[i];
        d.cyclic = false;
        for (int x : d.elements)
            if (G.order_of(x) == d.order()) {
                d.cyclic = true;
                d.generator = x;
                break;
            }
        std::vector<int> powers;
        for (int x : d.elements) powers.push_back(G.pow(x, static_cast<i64>(p)));
        d.pth_power = lookup_.at(G.closure(powers));
        std::vector<char> in(G.size(), 0);
        for (int x : d.elements) in[x] = 1;
        for (int g = 0; g < G.size(); ++g) {
            bool ok = true;
            for (int x : d.elements)
                if (!in[G.conj(g, x)]) {
                    ok = false;
                    break;
                }
            if (ok) d.normalizer.push_back(g);
        }
        std::vector<int> all(G.size());
        for (int g = 0; g < G.size(); ++g) all[g] = g;
        d.left_cosets = left_coset_reps(G, all, d.elements);
        for (int x = 0; x < B.size(); ++x)
            if (in[level_->to_quotient(x)]) d.preimage.push_back(x);
        d.ab = make_subquotient(B, d.preimage, B.commutator_subgroup(d.preimage));
        subs_.push_back(std::move(d));
    }

    // generating set of G in canonical order
    std::vector<int> cur{0};
    for (int g = 0; g < G.size(); ++g) {
        if (std::binary_search(cur.begin(), cur.end(), g)) continue;
        gens_.push_back(g);
        cur = G.closure(gens_);
    }

    for (const auto& big : subs_) {
        const auto comm = B.commutator_subgroup(big.preimage);
        for (const auto& small : subs_) {
            if (!contains(big.index, small.index)) continue;
            if (!std::includes(small.preimage.begin(), small.preimage.end(), comm.begin(), comm.end())) continue;
            PairDatum pd;
            pd.small = small.index;
            pd.big = big.index;
            pd.index = big.order() / small.order();
            pd.carrier = make_subquotient(B, small.preimage, comm);
            pd.project.resize(small.ab.size());
            for (int c = 0; c < small.ab.size(); ++c) pd.project[c] = pd.carrier.project(small.ab.rep[c]);
            pd.include.resize(pd.carrier.size());
            for (int c = 0; c < pd.carrier.size(); ++c) pd.include[c] = big.ab.project(pd.carrier.rep[c]);
            pairs_.emplace(std::make_pair(small.index, big.index), std::move(pd));
        }
    }
}

int SubgroupLattice::find(const std::vector<int>& s) const {
    auto it = lookup_.find(s);
    return it == lookup_.end() ? -1 : it->second;
}

bool SubgroupLattice::contains(int big, int small) const {
    const auto& a = subs_[big].elements;
    const auto& b = subs_[small].elements;
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

int SubgroupLattice::conjugate(int P, int g) const {
    const FiniteGroup& G = level_->quotient();
    std::vector<int> img;
    for (int x : subs_[P].elements) img.push_back(G.conj(g, x));
    std::sort(img.begin(), img.end());
    return lookup_.at(img);
}

std::vector<int> SubgroupLattice::conjugation_map(int P, int g_level) const {
    const FiniteGroup& B = level_->group();
    int Q = conjugate(P, level_->to_quotient(g_level));
    const auto& src = subs_[P].ab;
    const auto& dst = subs_[Q].ab;
    std::vector<int> m(src.size());
    for (int c = 0; c < src.size(); ++c) m[c] = dst.project(B.conj(g_level, src.rep[c]));
    return m;
}

std::vector<int> SubgroupLattice::cyclic_subgroups() const {
    std::vector<int> out;
    for (const auto& d : subs_)
        if (d.cyclic) out.push_back(d.index);
    return out;
}

const PairDatum* SubgroupLattice::pair(int small, int big) const {
    auto it = pairs_.find({small, big});
    return it == pairs_.end() ? nullptr : &it->second;
}

}  // namespace iwasawa
