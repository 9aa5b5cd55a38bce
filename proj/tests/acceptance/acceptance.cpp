// Acceptance run: one PASS/FAIL line per criterion, then a nonzero exit if any failed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "iwasawa/suites.hpp"

using namespace iwasawa;

namespace {

const std::vector<std::string> kGroups = {"cyclic:3", "elem-abelian:3^2", "cyclic:9", "heisenberg:3"};
// levels and precision for the sampled criteria
const std::vector<int> kLevels = {0, 1, 2};
constexpr int kSamplePrecision = 2;

struct Outcome {
    bool passed = true;
    std::string note;
    void fail(const std::string& why) {
        if (passed) note = why;
        passed = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int report(int number, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s (%.1fs)%s%s\n", o.passed ? "PASS" : "FAIL", number, title.c_str(),
                seconds_since(t0), o.note.empty() ? "" : " -- ", o.note.c_str());
    std::fflush(stdout);
    return o.passed ? 0 : 1;
}

std::string config_name(const std::string& g, int j, int m) {
    std::ostringstream s;
    s << g << " j=" << j << " m=" << m;
    return s.str();
}

// Runs a sampled check on every group at every level.  A run must check at least `minimum` items,
// except that a run whose steps were all enumerated completely is exempt.
Outcome sampled(const std::function<SampledVerdict(std::shared_ptr<const SubgroupLattice>, int, std::uint64_t)>& check,
                const std::vector<int>& precisions, int minimum) {
    Outcome o;
    long total = 0;
    int runs = 0, exhaustive = 0, random = 0;
    std::uint64_t seed = 1000;
    for (const auto& g : kGroups)
        for (int j : kLevels) {
            auto lat = build_lattice(g, j);
            for (int m : precisions) {
                SampledVerdict v = check(lat, m, seed++);
                const std::string where = config_name(g, j, m);
                if (!v.verdict.passed) o.fail(where + ": " + v.verdict.detail);
                else if (v.checked < minimum && v.sampled_steps > 0) o.fail(where + ": only " + std::to_string(v.checked) + " checked");
                total += v.checked;
                exhaustive += v.exhaustive_steps;
                random += v.sampled_steps;
                ++runs;
            }
        }
    if (o.passed) {
        o.note = std::to_string(runs) + " runs, " + std::to_string(total) + " items";
        if (exhaustive + random > 0)
            o.note += ", " + std::to_string(exhaustive) + " steps enumerated, " + std::to_string(random) + " sampled";
    }
    return o;
}

}  // namespace

int main() {
    int failures = 0;

    failures += report(1, "additive isomorphism on 36 configurations", [] {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        int ok = 0;
        for (const auto& g : kGroups)
            for (int j : {0, 1, 2}) {
                auto lat = build_lattice(g, j);
                for (int m : {2, 3, 4}) {
                    AdditiveIsoReport r = verify_additive_iso(lat, m);
                    if (!r.passed) o.fail(config_name(g, j, m));
                    else ++ok;
                }
            }
        if (seconds_since(t0) >= 300) o.fail("over 5 minutes");
        if (o.passed) o.note = std::to_string(ok) + " configurations";
        return o;
    });

    failures += report(2, "delta and beta are mutually inverse", [] {
        Outcome o;
        for (const auto& g : kGroups)
            for (int j : {0, 1, 2}) {
                auto lat = build_lattice(g, j);
                for (int m : {2, 3, 4}) {
                    InverseReport r = verify_additive_inverse(lat, m);
                    if (!r.passed)
                        o.fail(config_name(g, j, m) + ": " + r.delta_beta.detail + " " + r.beta_delta.detail);
                }
            }
        return o;
    });

    failures += report(3, "theta lands in the multiplicative system", [] {
        Outcome o;
        constexpr int kUnits = 100;
        std::uint64_t seed = 300;
        for (const auto& g : kGroups)
            for (int j : kLevels) {
                // precision 1 + j matches the precision of the level-j approximants
                LevelAlgebra A(build_lattice(g, j), 1 + j);
                std::mt19937_64 rng(seed++);
                for (int s = 0; s < kUnits; ++s)
                    for (const auto& v : check_multiplicative(A, theta(A, random_unit(A.ring(), rng))))
                        if (!v.passed) o.fail(config_name(g, j, 1 + j) + ": " + v.check + " " + v.detail);
            }
        if (o.passed) o.note = std::to_string(kUnits) + " units per group and level";
        return o;
    });

    failures += report(4, "logarithm laws", [] {
        return sampled([](auto lat, int m, auto seed) { return check_log_laws(lat, m, 200, seed); },
                       {kSamplePrecision}, 200);
    });
    failures += report(5, "integral logarithm", [] {
        return sampled([](auto lat, int m, auto seed) { return check_integral_log(lat, m, 200, seed); },
                       {kSamplePrecision}, 200);
    });
    failures += report(6, "log relation", [] {
        return sampled([](auto lat, int m, auto seed) { return check_log_relation(lat, m, 50, seed); },
                       {kSamplePrecision}, 50);
    });
    failures += report(7, "norm consistency", [] {
        // small rings are enumerated completely, larger ones get 100 random units per step
        return sampled([](auto lat, int m, auto seed) { return check_norm_consistency(lat, m, 100, seed); },
                       {1, kSamplePrecision}, 100);
    });

    failures += report(8, "approximants over Q", [] {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        int checks = 0;
        for (u64 F : {1, 5})
            for (int j : {0, 1}) {
                ZetaInstance inst = ZetaInstance::make(3, F, j);
                const std::string where = "F=" + std::to_string(F) + " j=" + std::to_string(j);
                std::vector<Verdict> vs;
                for (int k : {4, 16}) {
                    if (j >= 1) vs.push_back(check_inverse_system(inst, k));
                    vs.push_back(check_interpolation(inst, k));
                }
                vs.push_back(check_k_independence(inst, 4, 16));
                for (const auto& v : vs) {
                    ++checks;
                    if (!v.passed) o.fail(where + ": " + v.check + " " + v.detail);
                }
            }
        if (seconds_since(t0) >= 120) o.fail("over 2 minutes");
        if (o.passed) o.note = std::to_string(checks) + " checks";
        return o;
    });

    failures += report(9, "abelian congruence over the degree-p layer", [] {
        Outcome o;
        for (u64 F : {1, 5})
            for (int j : {0, 1})
                for (int k : {4, 16}) {
                    Verdict v = check_abelian_congruence(ZetaInstance::make(3, F, j), k);
                    if (!v.passed)
                        o.fail("F=" + std::to_string(F) + " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                               ": " + v.detail);
                }
        return o;
    });

    failures += report(10, "negative controls", [] {
        Outcome o;
        auto lat = build_lattice("heisenberg:3", 1);
        LevelAlgebra A(lat, 2);
        for (const char* c : {"M1", "M2", "M3", "M4", "A1", "A2", "A3"}) {
            Verdict v = run_negative_control(A, c, 7);
            if (!v.passed) o.fail(v.check + ": " + v.detail);
        }
        return o;
    });

    return failures == 0 ? 0 : 1;
}
