#include "iwasawa.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "iwasawa/suites.hpp"

using namespace iwasawa;

struct iw_level {
    std::string spec;
    int level;
    std::shared_ptr<const SubgroupLattice> lattice;
};

struct iw_report {
    SuiteResult result;
};

namespace {

thread_local std::string last_error;

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs f, translating the exception taxonomy into status codes.
template <class F>
iw_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return IW_OK;
    } catch (const ParseError& e) {
        last_error = e.what();
        return IW_ERR_PARSE;
    } catch (const NonUnit& e) {
        last_error = e.what();
        return IW_ERR_NON_UNIT;
    } catch (const InexactDivision& e) {
        last_error = e.what();
        return IW_ERR_INEXACT_DIVISION;
    } catch (const IntegralityFailure& e) {
        last_error = e.what();
        return IW_ERR_INTEGRALITY;
    } catch (const NonIntegral& e) {
        last_error = e.what();
        return IW_ERR_NON_INTEGRAL;
    } catch (const BoundExceeded& e) {
        last_error = e.what();
        return IW_ERR_BOUND_EXCEEDED;
    } catch (const InvalidArgument& e) {
        last_error = e.what();
        return IW_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return IW_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return IW_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
}

GroupConfig config_for(const iw_level* level, int precision, int samples, uint64_t seed) {
    require(level != nullptr, "null level handle");
    require(precision >= 1, "precision must be positive");
    require(samples >= 0, "sample count must be nonnegative");
    return GroupConfig{level->spec, level->level, precision, samples, seed};
}

}  // namespace

extern "C" {

const char* iw_status_message(iw_status status) {
    switch (status) {
        case IW_OK: return "ok";
        case IW_ERR_INVALID_ARGUMENT: return "invalid argument";
        case IW_ERR_PARSE: return "parse error";
        case IW_ERR_NON_UNIT: return "element is not a unit";
        case IW_ERR_INEXACT_DIVISION: return "inexact division";
        case IW_ERR_INTEGRALITY: return "integrality failure";
        case IW_ERR_NON_INTEGRAL: return "value is not p-integral";
        case IW_ERR_BOUND_EXCEEDED: return "resource bound exceeded";
        case IW_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* iw_last_error(void) { return last_error.c_str(); }

void iw_string_free(char* s) { std::free(s); }

iw_status iw_level_create(const char* group_spec, int level, iw_level** out) {
    return guarded([&] {
        require(group_spec && out, "null argument");
        require(level >= 0, "level must be nonnegative");
        *out = nullptr;
        auto lat = build_lattice(group_spec, level);
        *out = new iw_level{group_spec, level, std::move(lat)};
    });
}

void iw_level_destroy(iw_level* level) { delete level; }

iw_status iw_level_orders(const iw_level* level, int* quotient_order, int* level_order, int* subgroup_count) {
    return guarded([&] {
        require(level != nullptr, "null level handle");
        if (quotient_order) *quotient_order = level->lattice->level().quotient().size();
        if (level_order) *level_order = level->lattice->level().group().size();
        if (subgroup_count) *subgroup_count = level->lattice->count();
    });
}

iw_status iw_level_describe_json(const iw_level* level, char** json_out) {
    return guarded([&] {
        require(level && json_out, "null argument");
        *json_out = duplicate(describe_group(level->spec, level->level).dump(2) + "\n");
    });
}

iw_status iw_verify_additive(const iw_level* level, int precision, iw_report** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = new iw_report{run_additive_suite(config_for(level, precision, 0, 0))};
    });
}

iw_status iw_verify_k1(const iw_level* level, int precision, int samples, uint64_t seed, iw_report** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = new iw_report{run_k1_suite(config_for(level, precision, samples, seed))};
    });
}

iw_status iw_verify_congruence(const iw_level* level, int precision, int samples, uint64_t seed, iw_report** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = new iw_report{run_congruence_suite(config_for(level, precision, samples, seed))};
    });
}

iw_status iw_verify_zeta(uint64_t p, uint64_t conductor, int level, int k, int kprime, const uint64_t* sigma,
                         size_t sigma_len, int u_power, iw_report** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        require(sigma_len == 0 || sigma != nullptr, "null Sigma with nonzero length");
        ZetaConfig cfg;
        cfg.p = p;
        cfg.conductor = conductor;
        cfg.level = level;
        cfg.k = k;
        cfg.kprime = kprime;
        cfg.sigma.assign(sigma, sigma + sigma_len);
        cfg.u_power = u_power;
        *out = new iw_report{run_zeta_suite(cfg)};
    });
}

iw_status iw_replay(const char* certificate_json, int* identical, iw_report** out) {
    return guarded([&] {
        require(certificate_json && out, "null argument");
        ReplayOutcome r = replay_certificate(certificate_json);
        if (identical) *identical = r.identical ? 1 : 0;
        *out = new iw_report{std::move(r.result)};
    });
}

int iw_report_passed(const iw_report* report) { return report && report->result.passed() ? 1 : 0; }

size_t iw_report_verdict_count(const iw_report* report) { return report ? report->result.verdicts.size() : 0; }

iw_status iw_report_verdict(const iw_report* report, size_t index, const char** name, int* passed) {
    return guarded([&] {
        require(report != nullptr, "null report");
        require(index < report->result.verdicts.size(), "verdict index out of range");
        const Verdict& v = report->result.verdicts[index];
        if (name) *name = v.check.c_str();
        if (passed) *passed = v.passed ? 1 : 0;
    });
}

iw_status iw_report_certificate(const iw_report* report, char** json_out) {
    return guarded([&] {
        require(report && json_out, "null argument");
        *json_out = duplicate(render_certificate(report->result));
    });
}

iw_status iw_report_text(const iw_report* report, char** text_out) {
    return guarded([&] {
        require(report && text_out, "null argument");
        *text_out = duplicate(render_report(certificate_json(report->result)));
    });
}

void iw_report_destroy(iw_report* report) { delete report; }

iw_status iw_delta_table_check(const char* table_text, int k, int kprime, int* passed) {
    return guarded([&] {
        require(table_text && passed, "null argument");
        *passed = check_k_independence_table(parse_delta_table(table_text), k, kprime).passed ? 1 : 0;
    });
}

}  // extern "C"
