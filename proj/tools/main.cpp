// Command-line driver over the C interface.
//
// Exit status: 0 when every verdict passes, 1 when some verdict fails, 2 on usage errors,
// 3 when the library reports an error (bad group spec, bound exceeded, ...).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwasawa.h"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

struct GroupOptions {
    std::string group;
    std::string group_file;
    int level = 1;
    int precision = 2;
    int samples = 10;
    std::uint64_t seed = 1;
};

struct OutputOptions {
    std::string out;
    bool json = false;
};

struct LibraryError {
    iw_status status;
    std::string message;
};

void check(iw_status s) {
    if (s != IW_OK) throw LibraryError{s, iw_last_error()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string take(char* s) {
    std::string out = s ? s : "";
    iw_string_free(s);
    return out;
}

std::string group_text(const GroupOptions& g) {
    if (!g.group_file.empty()) return read_file(g.group_file);
    if (g.group.empty()) throw CLI::ValidationError("one of --group or --group-file is required");
    return g.group;
}

void add_group_options(CLI::App* cmd, GroupOptions& g, bool sampling) {
    auto* spec = cmd->add_option("--group", g.group, "group seed, e.g. heisenberg:3");
    auto* file = cmd->add_option("--group-file", g.group_file, "file holding a semidirect block");
    spec->excludes(file);
    cmd->add_option("--j", g.level, "level j")->check(CLI::Range(0, 4))->capture_default_str();
    if (sampling || cmd->get_name() != "describe")
        cmd->add_option("--prec", g.precision, "coefficient precision m")->check(CLI::Range(1, 8))->capture_default_str();
    if (sampling) {
        cmd->add_option("--samples", g.samples, "random units per check")->check(CLI::Range(0, 100000))->capture_default_str();
        cmd->add_option("--seed", g.seed, "random seed")->capture_default_str();
    }
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--out", o.out, "write the certificate to this file");
    cmd->add_flag("--json", o.json, "print the certificate instead of the report");
}

int emit(iw_report* report, const OutputOptions& o) {
    std::string cert, text;
    char* buf = nullptr;
    check(iw_report_certificate(report, &buf));
    cert = take(buf);
    check(iw_report_text(report, &buf));
    text = take(buf);
    const bool passed = iw_report_passed(report) != 0;
    iw_report_destroy(report);
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw LibraryError{IW_ERR_INVALID_ARGUMENT, "cannot write '" + o.out + "'"};
        f << cert;
    }
    std::cout << (o.json ? cert : text);
    return passed ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of K1 and congruence machinery for p-adic group rings"};
    app.require_subcommand(1);

    int exit_code = 0;

    // group describe
    auto* group_cmd = app.add_subcommand("group", "inspect a level group");
    group_cmd->require_subcommand(1);
    GroupOptions describe_opts;
    auto* describe = group_cmd->add_subcommand("describe", "print the level group and its subgroup lattice as JSON");
    add_group_options(describe, describe_opts, false);
    describe->callback([&] {
        iw_level* level = nullptr;
        check(iw_level_create(group_text(describe_opts).c_str(), describe_opts.level, &level));
        char* buf = nullptr;
        iw_status s = iw_level_describe_json(level, &buf);
        iw_level_destroy(level);
        check(s);
        std::cout << take(buf);
    });

    // verify <suite>
    auto* verify = app.add_subcommand("verify", "run one verification suite");
    verify->require_subcommand(1);

    GroupOptions additive_opts, k1_opts, congruence_opts;
    OutputOptions additive_out, k1_out, congruence_out, zeta_out;

    auto group_suite = [&](const char* name, const char* help, GroupOptions& g, OutputOptions& o, bool sampling,
                           auto runner) {
        auto* cmd = verify->add_subcommand(name, help);
        add_group_options(cmd, g, sampling);
        add_output_options(cmd, o);
        cmd->callback([&g, &o, &exit_code, runner] {
            iw_level* level = nullptr;
            check(iw_level_create(group_text(g).c_str(), g.level, &level));
            iw_report* report = nullptr;
            iw_status s = runner(level, g, &report);
            iw_level_destroy(level);
            check(s);
            exit_code = emit(report, o);
        });
    };
    group_suite("additive", "additive isomorphism and its inverse", additive_opts, additive_out, false,
                [](iw_level* l, const GroupOptions& g, iw_report** r) { return iw_verify_additive(l, g.precision, r); });
    group_suite("k1", "logarithm laws, integral logarithm, log relation, norm consistency", k1_opts, k1_out, true,
                [](iw_level* l, const GroupOptions& g, iw_report** r) {
                    return iw_verify_k1(l, g.precision, g.samples, g.seed, r);
                });
    group_suite("congruence", "image of theta in the multiplicative system, negative controls", congruence_opts,
                congruence_out, true, [](iw_level* l, const GroupOptions& g, iw_report** r) {
                    return iw_verify_congruence(l, g.precision, g.samples, g.seed, r);
                });

    std::uint64_t zp = 3, zcond = 1;
    int zj = 0, zk = 4, zkprime = 16, zu = 1;
    std::vector<std::uint64_t> zsigma;
    auto* zeta = verify->add_subcommand("zeta", "approximants and congruences of partial zeta values over Q");
    zeta->add_option("--p", zp, "odd prime")->capture_default_str();
    zeta->add_option("--cond", zcond, "conductor, prime to p")->capture_default_str();
    zeta->add_option("--j", zj, "level j")->check(CLI::Range(0, 3))->capture_default_str();
    zeta->add_option("--k", zk, "even weight")->capture_default_str();
    zeta->add_option("--kprime", zkprime, "second even weight")->capture_default_str();
    zeta->add_option("--sigma", zsigma, "extra primes of Sigma");
    zeta->add_option("--u-power", zu, "u acts as (1+p)^n")->capture_default_str();
    add_output_options(zeta, zeta_out);
    zeta->callback([&] {
        iw_report* report = nullptr;
        check(iw_verify_zeta(zp, zcond, zj, zk, zkprime, zsigma.data(), zsigma.size(), zu, &report));
        exit_code = emit(report, zeta_out);
    });

    // replay <certificate>
    std::string cert_path;
    OutputOptions replay_out;
    auto* replay = app.add_subcommand("replay", "re-verify a certificate from its recorded inputs");
    replay->add_option("certificate", cert_path, "certificate file")->required();
    add_output_options(replay, replay_out);
    replay->callback([&] {
        std::string text = read_file(cert_path);
        int identical = 0;
        iw_report* report = nullptr;
        check(iw_replay(text.c_str(), &identical, &report));
        int code = emit(report, replay_out);
        std::cerr << (identical ? "replay: certificate reproduced byte for byte\n"
                                : "replay: re-run certificate differs from the recorded one\n");
        exit_code = (code == 0 && identical) ? 0 : kExitFailed;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const LibraryError& e) {
        std::cerr << "error: " << iw_status_message(e.status) << ": " << e.message << "\n";
        return kExitError;
    }
    return exit_code;
}
