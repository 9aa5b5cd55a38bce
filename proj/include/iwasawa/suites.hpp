#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwasawa/congruence.hpp"
#include "iwasawa/lfunctions.hpp"

namespace iwasawa {

using Json = nlohmann::ordered_json;

// ---- sampled checks on the K1 side; each returns the first failure or a pass, and a count

struct SampledVerdict {
    Verdict verdict;
    int checked = 0;
    // norm consistency only: steps enumerated completely and steps checked on random units
    int exhaustive_steps = 0;
    int sampled_steps = 0;
};

// exp/log on p*ring: exp(log(1+z)) = 1+z, log(exp(z)) = z, and log(xy) = log x + log y in the
// conjugacy module.
SampledVerdict check_log_laws(std::shared_ptr<const SubgroupLattice> lat, int precision, int samples,
                              std::uint64_t seed);
// L(x) has scale 0, agrees with the p-power formula, and satisfies omega(L(x)) = 1;
// L(g) = 0 for group elements g.
SampledVerdict check_integral_log(std::shared_ptr<const SubgroupLattice> lat, int precision, int samples,
                                  std::uint64_t seed);
// beta(L(x)) = calL(theta(x)) componentwise
SampledVerdict check_log_relation(std::shared_ptr<const SubgroupLattice> lat, int precision, int samples,
                                  std::uint64_t seed);
// determinant norm against the product of character twists on every index-p step S < U_P'^ab
// coming from the lattice.  A step is checked on every element of its group ring when that ring
// has at most `exhaustive_limit` elements, otherwise on `samples` random elements.
SampledVerdict check_norm_consistency(std::shared_ptr<const SubgroupLattice> lat, int precision, int samples,
                                      std::uint64_t seed, u64 exhaustive_limit = 19683);

// One negative control: the named checker must fail on a constructed violating tuple, and the
// witness must involve the altered subgroup.
Verdict run_negative_control(const LevelAlgebra& A, const std::string& check, std::uint64_t seed);

// ---- suites

struct GroupConfig {
    std::string group = "cyclic:3";
    int level = 1;
    int precision = 2;
    int samples = 10;
    std::uint64_t seed = 1;
};

struct ZetaConfig {
    u64 p = 3;
    u64 conductor = 1;
    int level = 0;
    int k = 4;
    int kprime = 16;
    std::vector<u64> sigma;  // p and the primes of the conductor are always added
    int u_power = 1;
};

struct SuiteResult {
    std::string suite;
    Json inputs;
    std::vector<Verdict> verdicts;
    Json measurements = Json::object();
    bool passed() const;
};

std::shared_ptr<const SubgroupLattice> build_lattice(const std::string& group, int level);

Json describe_group(const std::string& group, int level);
SuiteResult run_additive_suite(const GroupConfig& cfg);
SuiteResult run_k1_suite(const GroupConfig& cfg);
SuiteResult run_congruence_suite(const GroupConfig& cfg);
SuiteResult run_zeta_suite(const ZetaConfig& cfg);

// ---- certificates

Json verdict_to_json(const Verdict& v);
Json certificate_json(const SuiteResult& r);
// pretty-printed JSON with a trailing newline; byte-identical for identical inputs
std::string render_certificate(const SuiteResult& r);
// plain-text report rendered from a certificate document
std::string render_report(const Json& certificate);

GroupConfig group_config_from_json(const Json& inputs);
ZetaConfig zeta_config_from_json(const Json& inputs);
SuiteResult run_suite(const std::string& suite, const Json& inputs);

struct ReplayOutcome {
    bool identical = false;  // the re-run produced the same certificate bytes
    bool passed = false;     // the re-run passed
    std::string recorded;    // normalized recorded certificate
    std::string fresh;       // certificate of the re-run
    SuiteResult result;
};
// Parses a certificate (ParseError with line/column on malformed JSON), re-runs its suite from
// the recorded inputs and compares.
ReplayOutcome replay_certificate(const std::string& text);

}  // namespace iwasawa
