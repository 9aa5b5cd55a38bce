#include "iwasawa/congruence.hpp"

#include <algorithm>
#include <random>

#include "iwasawa/linalg.hpp"

namespace iwasawa {

namespace {

bool is_zero(const Elem& v) {
    return std::all_of(v.begin(), v.end(), [](u64 c) { return c == 0; });
}

std::string subgroup_label(const SubgroupLattice& lat, int P) {
    return "#" + std::to_string(P) + " (order " + std::to_string(lat.at(P).order()) + ")";
}

std::vector<u64> reduce(const std::vector<u64>& v, u64 q) {
    std::vector<u64> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] % q;
    return out;
}

Tuple reduce_tuple(const Tuple& t, u64 q) {
    Tuple out;
    for (const auto& v : t) out.push_back(reduce(v, q));
    return out;
}

int log_p_order(u64 n, u64 p) { return valuation(static_cast<i64>(n), p); }

// prod over cyclic Q != P with Q^p = P of phi(alpha_Q(x_Q)), in U_P^ab
Elem frobenius_product(const LevelAlgebra& A, int P, const Tuple& x) {
    const auto& lat = A.lattice();
    const GroupRing& ring = A.sub_ring(P);
    Elem acc = ring.one();
    for (int Q : lat.cyclic_subgroups()) {
        if (Q == P || lat.at(Q).pth_power != P) continue;
        acc = ring.mul(acc, A.phi(Q, P, A.alpha(Q, x[Q])));
    }
    return acc;
}

}  // namespace

// ------------------------------------------------------------------ multiplicative system

Verdict check_M1(const LevelAlgebra& A, const Tuple& x) {
    const auto& lat = A.lattice();
    for (int big = 0; big < lat.count(); ++big)
        for (int small = 0; small < big; ++small) {
            if (!lat.pair(small, big)) continue;
            Elem lhs = A.norm(small, big, x[big]);
            Elem rhs = A.project(small, big, x[small]);
            if (lhs != rhs)
                return Verdict::fail("M1", small, big,
                                     "norm from " + subgroup_label(lat, big) + " differs from projection of " +
                                         subgroup_label(lat, small),
                                     A.pair_ring(small, big).sub(lhs, rhs));
        }
    return Verdict::pass("M1");
}

Verdict check_M2(const LevelAlgebra& A, const Tuple& x) {
    const auto& lat = A.lattice();
    for (int g : lat.generators()) {
        const int lifted = A.level().lift(g);
        for (int P = 0; P < lat.count(); ++P) {
            int Q = lat.conjugate(P, g);
            Elem moved = A.conjugate(P, lifted, x[P]);
            if (moved != x[Q])
                return Verdict::fail("M2", P, Q,
                                     "conjugation by generator " + std::to_string(g) + " does not carry x at " +
                                         subgroup_label(lat, P) + " to x at " + subgroup_label(lat, Q),
                                     A.sub_ring(Q).sub(moved, x[Q]));
        }
    }
    return Verdict::pass("M2");
}

Verdict check_M3(const LevelAlgebra& A, const Tuple& x) {
    const auto& lat = A.lattice();
    const int p = static_cast<int>(A.p());
    for (int big = 0; big < lat.count(); ++big)
        for (int small = 0; small < big; ++small) {
            if (!lat.contains(big, small) || lat.at(big).order() != p * lat.at(small).order()) continue;
            Elem r = A.sub_ring(small).sub(A.ver(small, big, x[big]), x[small]);
            if (!A.trace_ideal(small, big).contains(r))
                return Verdict::fail("M3", small, big,
                                     "transfer from " + subgroup_label(lat, big) + " is not congruent to x at " +
                                         subgroup_label(lat, small) + " modulo the trace ideal",
                                     r);
        }
    return Verdict::pass("M3");
}

Verdict check_M4(const LevelAlgebra& A, const Tuple& x) {
    const auto& lat = A.lattice();
    for (int P : lat.cyclic_subgroups()) {
        const GroupRing& ring = A.sub_ring(P);
        Elem rhs = frobenius_product(A, P, x);
        if (P == lat.trivial()) rhs = ring.mul(A.phi(P, P, x[P]), rhs);
        Elem r = ring.sub(A.alpha(P, x[P]), rhs);
        if (!A.weyl_trace_ideal(P, 1).contains(r))
            return Verdict::fail("M4", P, A.normalizer_index(P),
                                 "Frobenius congruence fails at " + subgroup_label(lat, P) +
                                     " modulo p times the trace ideal",
                                 r);
    }
    return Verdict::pass("M4");
}

std::vector<Verdict> check_multiplicative(const LevelAlgebra& A, const Tuple& x) {
    return {check_M1(A, x), check_M2(A, x), check_M3(A, x), check_M4(A, x)};
}

// ------------------------------------------------------------------ additive system

std::vector<std::pair<int, int>> additive_pairs(const SubgroupLattice& lat) {
    const FiniteGroup& G = lat.level().quotient();
    std::vector<std::pair<int, int>> out;
    for (int big = 0; big < lat.count(); ++big) {
        std::vector<int> derived;
        bool derived_known = false;
        for (int small = 0; small < big; ++small) {
            if (!lat.pair(small, big)) continue;
            const auto& d = lat.at(small);
            if (d.cyclic && small != lat.trivial()) {
                if (!derived_known) {
                    derived = G.commutator_subgroup(lat.at(big).elements);
                    derived_known = true;
                }
                if (derived == d.elements) continue;
            }
            out.emplace_back(small, big);
        }
    }
    return out;
}

Elem additive_pair_residual(const LevelAlgebra& A, int small, int big, const Tuple& a) {
    const auto& lat = A.lattice();
    const GroupRing& Q = A.pair_ring(small, big);
    Elem tr = A.trace(small, big, a[big]);
    if (lat.at(big).cyclic) return tr;
    if (lat.at(small).cyclic) tr = A.eta_on_pair(small, big, tr);
    return Q.sub(tr, A.project(small, big, a[small]));
}

Verdict check_A1(const LevelAlgebra& A, const Tuple& a) {
    const auto& lat = A.lattice();
    for (auto [small, big] : additive_pairs(lat)) {
        Elem r = additive_pair_residual(A, small, big, a);
        if (!is_zero(r))
            return Verdict::fail("A1", small, big,
                                 "trace from " + subgroup_label(lat, big) + " does not match " +
                                     subgroup_label(lat, small),
                                 r);
    }
    return Verdict::pass("A1");
}

Verdict check_A2(const LevelAlgebra& A, const Tuple& a) {
    const auto& lat = A.lattice();
    for (int g : lat.generators()) {
        const int lifted = A.level().lift(g);
        for (int P : lat.cyclic_subgroups()) {
            int Q = lat.conjugate(P, g);
            Elem moved = A.conjugate(P, lifted, a[P]);
            if (moved != a[Q])
                return Verdict::fail("A2", P, Q,
                                     "conjugation by generator " + std::to_string(g) + " does not carry a at " +
                                         subgroup_label(lat, P) + " to a at " + subgroup_label(lat, Q),
                                     A.sub_ring(Q).sub(moved, a[Q]));
        }
    }
    return Verdict::pass("A2");
}

Verdict check_A3(const LevelAlgebra& A, const Tuple& a) {
    const auto& lat = A.lattice();
    for (int P : lat.cyclic_subgroups())
        if (!A.weyl_trace_ideal(P).contains(a[P]))
            return Verdict::fail("A3", P, A.normalizer_index(P),
                                 "component at " + subgroup_label(lat, P) + " is not in the trace ideal", a[P]);
    return Verdict::pass("A3");
}

std::vector<Verdict> check_additive(const LevelAlgebra& A, const Tuple& a) {
    return {check_A1(A, a), check_A2(A, a), check_A3(A, a)};
}

// ------------------------------------------------------------------ the additive module as a kernel

namespace {

// Parametrization of candidate tuples: a_P = T_P(c_P) for cyclic P, a_P free otherwise.
// Rows of the constraint matrix: A1 residuals on every applicable pair, then A2 residuals.
struct AdditiveSystem {
    std::vector<int> offset;  // variable offset per subgroup
    int variables = 0;
    Matrix constraints;
    long log_parametrization_kernel = 0;

    explicit AdditiveSystem(const LevelAlgebra& A) {
        const auto& lat = A.lattice();
        const Zmod& R = A.coeffs();
        for (int P = 0; P < lat.count(); ++P) {
            offset.push_back(variables);
            variables += A.sub_ring(P).size();
            if (lat.at(P).cyclic) {
                const auto& T = A.weyl_trace_ideal(P);
                log_parametrization_kernel += static_cast<long>(A.sub_ring(P).size()) * R.m() - T.log_order();
            }
        }
        const auto pairs = additive_pairs(lat);
        std::vector<int> row_offset_pair;
        int rows = 0;
        for (auto [s, b] : pairs) {
            row_offset_pair.push_back(rows);
            rows += A.pair_ring(s, b).size();
        }
        struct ConjRow {
            int g, P, Q, offset;
        };
        std::vector<ConjRow> conj_rows;
        for (int g : lat.generators())
            for (int P : lat.cyclic_subgroups()) {
                int Q = lat.conjugate(P, g);
                conj_rows.push_back({g, P, Q, rows});
                rows += A.sub_ring(Q).size();
            }
        constraints = Matrix(rows, variables);

        for (int P = 0; P < lat.count(); ++P) {
            const GroupRing& ring = A.sub_ring(P);
            for (int i = 0; i < ring.size(); ++i) {
                Elem e = ring.basis(i);
                Elem value = lat.at(P).cyclic ? A.weyl_trace_ideal(P).apply(e) : e;
                if (is_zero(value)) continue;
                const int col = offset[P] + i;
                Tuple t(lat.count());
                for (int Q = 0; Q < lat.count(); ++Q) t[Q] = A.sub_ring(Q).zero();
                t[P] = value;
                for (size_t k = 0; k < pairs.size(); ++k) {
                    auto [s, b] = pairs[k];
                    if (s != P && b != P) continue;
                    Elem r = additive_pair_residual(A, s, b, t);
                    for (size_t c = 0; c < r.size(); ++c) constraints.at(row_offset_pair[k] + static_cast<int>(c), col) = r[c];
                }
                for (const auto& cr : conj_rows) {
                    if (cr.P != P && cr.Q != P) continue;
                    Elem moved = A.conjugate(cr.P, A.level().lift(cr.g), t[cr.P]);
                    Elem r = A.sub_ring(cr.Q).sub(moved, t[cr.Q]);
                    for (size_t c = 0; c < r.size(); ++c) constraints.at(cr.offset + static_cast<int>(c), col) = R.add(constraints.at(cr.offset + static_cast<int>(c), col), r[c]);
                }
            }
        }
    }

    Tuple expand(const LevelAlgebra& A, const std::vector<u64>& v) const {
        const auto& lat = A.lattice();
        Tuple t;
        for (int P = 0; P < lat.count(); ++P) {
            const int n = A.sub_ring(P).size();
            Elem c(v.begin() + offset[P], v.begin() + offset[P] + n);
            t.push_back(lat.at(P).cyclic ? A.weyl_trace_ideal(P).apply(c) : c);
        }
        return t;
    }
};

std::vector<u64> flatten(const Tuple& t) {
    std::vector<u64> out;
    for (const auto& v : t) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

long additive_module_log_order(const LevelAlgebra& A) {
    AdditiveSystem sys(A);
    SmithForm sf(A.coeffs(), sys.constraints, false, false);
    return sf.log_kernel_order() - sys.log_parametrization_kernel;
}

std::vector<Tuple> additive_module_generators(const LevelAlgebra& A) {
    AdditiveSystem sys(A);
    SmithForm sf(A.coeffs(), sys.constraints, false, true);
    std::vector<Tuple> out;
    for (const auto& v : sf.kernel_generators()) {
        Tuple t = sys.expand(A, v);
        bool zero = std::all_of(t.begin(), t.end(), [](const Elem& e) { return is_zero(e); });
        if (!zero) out.push_back(std::move(t));
    }
    return out;
}

int additive_guard_digits(const SubgroupLattice& lat) {
    return 2 * log_p_order(static_cast<u64>(lat.level().quotient().size()), lat.level().p()) + 2;
}

namespace {

Matrix columns_to_matrix(const std::vector<std::vector<u64>>& columns, int rows) {
    Matrix M(rows, static_cast<int>(columns.size()));
    for (size_t c = 0; c < columns.size(); ++c) M.set_column(static_cast<int>(c), columns[c]);
    return M;
}

long reduced_span_log_order(const LevelAlgebra& Am, const std::vector<Tuple>& gens, int rows) {
    if (gens.empty()) return 0;
    const u64 q = Am.coeffs().modulus();
    std::vector<std::vector<u64>> cols;
    for (const auto& t : gens) cols.push_back(reduce(flatten(t), q));
    return SmithForm(Am.coeffs(), columns_to_matrix(cols, rows), false, false).log_image_order();
}

int tuple_length(const LevelAlgebra& A) {
    int n = 0;
    for (int P = 0; P < A.lattice().count(); ++P) n += A.sub_ring(P).size();
    return n;
}

}  // namespace

AdditiveIsoReport verify_additive_iso(std::shared_ptr<const SubgroupLattice> lat, int precision) {
    const int W = precision + additive_guard_digits(*lat);
    LevelAlgebra AW(lat, W);
    LevelAlgebra Am(lat, precision);
    const int rows = tuple_length(Am);
    AdditiveIsoReport rep;
    rep.precision = precision;
    rep.working_precision = W;
    rep.classes = Am.conj().size();
    rep.image_contained = Verdict::pass("beta image in additive module");

    std::vector<std::vector<u64>> cols_W, cols_m;
    const u64 q = Am.coeffs().modulus();
    for (int c = 0; c < rep.classes; ++c) {
        Tuple b = beta(AW, AW.conj().basis(c));
        if (rep.image_contained.passed)
            for (auto& v : check_additive(AW, b))
                if (!v.passed) {
                    v.detail = "beta of class " + std::to_string(c) + ": " + v.detail;
                    rep.image_contained = v;
                    break;
                }
        cols_W.push_back(flatten(b));
        cols_m.push_back(reduce(cols_W.back(), q));
    }
    // injectivity over Z_p: every invariant factor visible below p^W
    SmithForm sfW(AW.coeffs(), columns_to_matrix(cols_W, rows), false, false);
    rep.beta_rank = sfW.rank();
    for (int e : sfW.exponents()) rep.beta_max_exponent = std::max(rep.beta_max_exponent, e);
    rep.injective = rep.beta_rank == rep.classes;

    SmithForm sfm(Am.coeffs(), columns_to_matrix(cols_m, rows), false, false);
    rep.log_image = sfm.log_image_order();
    rep.log_kernel_naive = sfm.log_kernel_order();
    rep.log_psi_naive = additive_module_log_order(Am);
    rep.log_psi = reduced_span_log_order(Am, additive_module_generators(AW), rows);
    rep.passed = rep.image_contained.passed && rep.injective && rep.log_image == rep.log_psi;
    return rep;
}

InverseReport verify_additive_inverse(std::shared_ptr<const SubgroupLattice> lat, int precision) {
    const int W = precision + additive_guard_digits(*lat);
    LevelAlgebra AW(lat, W);
    LevelAlgebra Am(lat, precision);
    const int rows = tuple_length(Am);
    const u64 q = Am.coeffs().modulus();
    InverseReport rep;
    rep.precision = precision;
    rep.working_precision = W;
    rep.delta_beta = Verdict::pass("delta after beta");
    rep.beta_delta = Verdict::pass("beta after delta");

    std::vector<std::vector<u64>> image_cols;
    for (int c = 0; c < AW.conj().size(); ++c) {
        Tuple b = beta(AW, AW.conj().basis(c));
        image_cols.push_back(reduce(flatten(b), q));
        ScaledApproximant d = delta(AW, b);
        ++rep.basis_checked;
        if (rep.delta_beta.passed && (!d.is_integral() || d.integral_value(precision) != Am.conj().basis(c)))
            rep.delta_beta = Verdict::fail("delta after beta", -1, -1,
                                           "class " + std::to_string(c) + " is not recovered", d.payload());
    }
    rep.log_image = SmithForm(Am.coeffs(), columns_to_matrix(image_cols, rows), false, false).log_image_order();

    auto gens = additive_module_generators(AW);
    for (const auto& a : gens) {
        const int index = rep.generators_checked++;
        Tuple am = reduce_tuple(a, q);
        ScaledApproximant d = delta(AW, a);
        if (!d.is_integral()) {
            rep.beta_delta = Verdict::fail("beta after delta", -1, -1,
                                           "delta of generator " + std::to_string(index) + " is not integral",
                                           d.payload());
            break;
        }
        Tuple back = beta(Am, d.integral_value(precision));
        for (size_t P = 0; P < back.size(); ++P)
            if (back[P] != am[P]) {
                rep.beta_delta = Verdict::fail("beta after delta", static_cast<int>(P), -1,
                                               "generator " + std::to_string(index) + " is not recovered",
                                               Am.sub_ring(static_cast<int>(P)).sub(back[P], am[P]));
                break;
            }
        if (!rep.beta_delta.passed) break;
    }
    rep.log_generated = reduced_span_log_order(Am, gens, rows);
    rep.passed = rep.delta_beta.passed && rep.beta_delta.passed && rep.log_generated == rep.log_image;
    return rep;
}

// ------------------------------------------------------------------ sampled statements about theta

ThetaSampleReport verify_theta_samples(std::shared_ptr<const SubgroupLattice> lat, int precision, int samples,
                                       std::uint64_t seed) {
    ThetaSampleReport rep;
    rep.precision = precision;
    rep.samples = samples;
    rep.seed = seed;
    rep.first_failure = Verdict::pass("theta samples");
    const u64 p = lat->level().p();
    const int S = log_p_order(static_cast<u64>(lat->level().quotient().size()), p);
    LevelAlgebra Am(lat, precision);
    const int W = std::max(precision + 2 + S, integral_log_working_precision(Am, precision));
    LevelAlgebra AW(lat, W);
    const u64 q = Am.coeffs().modulus();
    std::mt19937_64 rng(seed);
    auto note = [&](Verdict v) {
        if (rep.first_failure.passed) rep.first_failure = std::move(v);
    };

    const int collision_budget = std::min(samples, 8);
    for (int s = 0; s < samples; ++s) {
        Elem x = random_unit(AW.ring(), rng);
        Tuple tx = theta(AW, x);
        for (auto& v : check_multiplicative(Am, reduce_tuple(tx, q)))
            if (!v.passed) {
                ++rep.containment_failures;
                v.detail = "sample " + std::to_string(s) + ": " + v.detail;
                note(v);
                break;
            }
        if (s >= collision_budget) continue;
        // units equal in K_1 must have equal theta and equal integral logarithm
        Elem y = random_unit(AW.ring(), rng);
        const int g = static_cast<int>(rng() % static_cast<u64>(AW.ring().size()));
        const std::pair<Elem, Elem> pairs[] = {{AW.ring().mul(x, y), AW.ring().mul(y, x)},
                                               {x, AW.ring().conjugate(x, g)}};
        for (const auto& [u, v] : pairs) {
            ++rep.collisions_checked;
            bool theta_equal = theta(AW, u) == theta(AW, v);
            auto lu = integral_log(AW, u), lv = integral_log(AW, v);
            if (!theta_equal || !lu.equals(lv, precision)) {
                ++rep.collision_mismatches;
                note(Verdict::fail("theta on equal classes", -1, -1,
                                   theta_equal ? "integral logarithms differ" : "theta differs", {}));
            }
        }
    }

    // torsion units: Teichmueller scalars times group elements lie in the kernel of the logarithmic map
    const u64 zeta = teichmuller(AW.coeffs(), 2 % p == 0 ? 1 : 2);
    const int n = AW.ring().size();
    const int step = std::max(1, n / 27);
    for (int g = 0; g < n; g += step) {
        ++rep.torsion_checked;
        Elem x = AW.ring().basis(g, zeta);
        LogTuple l = calL(AW, theta(AW, x));
        bool zero = std::all_of(l.values.begin(), l.values.end(), [](const Elem& e) { return is_zero(e); });
        if (!zero) {
            ++rep.torsion_failures;
            note(Verdict::fail("logarithmic kernel", -1, -1,
                               "torsion unit at element " + std::to_string(g) + " has nonzero image", {}));
        }
    }
    rep.passed = rep.containment_failures == 0 && rep.collision_mismatches == 0 && rep.torsion_failures == 0;
    return rep;
}

// ------------------------------------------------------------------ negative controls

ViolatingTuple make_violating_tuple(const LevelAlgebra& A, const std::string& check, std::uint64_t seed) {
    const auto& lat = A.lattice();
    const Zmod& R = A.coeffs();
    const bool multiplicative = !check.empty() && check[0] == 'M';
    Verdict (*checker)(const LevelAlgebra&, const Tuple&) = nullptr;
    if (check == "M1") checker = check_M1;
    else if (check == "M2") checker = check_M2;
    else if (check == "M3") checker = check_M3;
    else if (check == "M4") checker = check_M4;
    else if (check == "A1") checker = check_A1;
    else if (check == "A2") checker = check_A2;
    else if (check == "A3") checker = check_A3;
    else throw InvalidArgument("unknown condition '" + check + "'");

    std::mt19937_64 rng(seed);
    Tuple base;
    if (multiplicative) {
        base = theta(A, random_unit(A.ring(), rng));
    } else {
        ConjModule::Elem c = A.conj().zero();
        for (auto& v : c) v = rng() % R.modulus();
        base = beta(A, c);
    }
    if (!checker(A, base).passed) throw Error("base tuple for the negative control already fails " + check);

    // Alter one component at a time, most drastic perturbations last.
    for (int P = 0; P < lat.count(); ++P) {
        const GroupRing& ring = A.sub_ring(P);
        const int classes = std::min(ring.size(), 4);
        for (int k = R.m() - 1; k >= 0; --k)
            for (int h = 0; h < classes; ++h) {
                Tuple t = base;
                const u64 step = ipow(A.p(), static_cast<unsigned>(k));
                if (multiplicative) {
                    // multiply by 1 + p^k h, a unit for k >= 1 or h != 0
                    Elem factor = ring.add(ring.one(), ring.basis(h, step % R.modulus()));
                    if (!ring.is_unit(factor)) continue;
                    t[P] = ring.mul(t[P], factor);
                } else {
                    t[P] = ring.add(t[P], ring.basis(h, step % R.modulus()));
                }
                Verdict v = checker(A, t);
                if (!v.passed && (v.small == P || v.big == P)) return ViolatingTuple{check, P, std::move(t)};
            }
    }
    throw InvalidArgument("condition " + check + " cannot be violated by a one-component change on this group");
}

}  // namespace iwasawa
