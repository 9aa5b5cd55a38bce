#include <doctest.h>

#include <cstring>
#include <string>

#include "iwasawa.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    iw_string_free(s);
    return out;
}

std::string certificate_of(iw_report* r) {
    char* buf = nullptr;
    REQUIRE(iw_report_certificate(r, &buf) == IW_OK);
    return take(buf);
}

}  // namespace

TEST_CASE("level handles") {
    iw_level* level = nullptr;
    REQUIRE(iw_level_create("heisenberg:3", 1, &level) == IW_OK);
    int quot = 0, lvl = 0, subs = 0;
    CHECK(iw_level_orders(level, &quot, &lvl, &subs) == IW_OK);
    CHECK(quot == 27);
    CHECK(lvl == 81);
    CHECK(subs == 19);
    char* json = nullptr;
    CHECK(iw_level_describe_json(level, &json) == IW_OK);
    std::string d = take(json);
    CHECK(d.find("\"level_order\": 81") != std::string::npos);
    iw_level_destroy(level);

    iw_level* bad = nullptr;
    CHECK(iw_level_create("cyclic:6", 1, &bad) == IW_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK(std::strlen(iw_last_error()) > 0);
    CHECK(iw_level_create(nullptr, 1, &bad) == IW_ERR_INVALID_ARGUMENT);
    CHECK(iw_level_create("cyclic:3", -1, &bad) == IW_ERR_INVALID_ARGUMENT);
    CHECK(std::string(iw_status_message(IW_ERR_NON_UNIT)) == "element is not a unit");
}

TEST_CASE("additive report") {
    iw_level* level = nullptr;
    REQUIRE(iw_level_create("cyclic:3", 1, &level) == IW_OK);
    iw_report* r = nullptr;
    REQUIRE(iw_verify_additive(level, 2, &r) == IW_OK);
    CHECK(iw_report_passed(r) == 1);
    CHECK(iw_report_verdict_count(r) >= 5);
    const char* name = nullptr;
    int passed = 0;
    CHECK(iw_report_verdict(r, 0, &name, &passed) == IW_OK);
    CHECK(name != nullptr);
    CHECK(passed == 1);
    CHECK(iw_report_verdict(r, 1000, &name, &passed) == IW_ERR_INVALID_ARGUMENT);
    char* text = nullptr;
    CHECK(iw_report_text(r, &text) == IW_OK);
    CHECK(take(text).find("PASS") != std::string::npos);
    iw_report_destroy(r);
    CHECK(iw_verify_additive(level, 0, &r) == IW_ERR_INVALID_ARGUMENT);
    iw_level_destroy(level);
    CHECK(iw_verify_additive(nullptr, 2, &r) == IW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("zeta certificates are deterministic and replay byte for byte") {
    const uint64_t sigma[] = {7};
    iw_report* a = nullptr;
    iw_report* b = nullptr;
    REQUIRE(iw_verify_zeta(3, 5, 1, 4, 16, sigma, 1, 1, &a) == IW_OK);
    REQUIRE(iw_verify_zeta(3, 5, 1, 4, 16, sigma, 1, 1, &b) == IW_OK);
    CHECK(iw_report_passed(a) == 1);
    std::string ca = certificate_of(a), cb = certificate_of(b);
    CHECK(ca == cb);
    CHECK(ca.rfind("{\n  \"format\": \"iwasawa-certificate\"", 0) == 0);
    iw_report_destroy(a);
    iw_report_destroy(b);

    int identical = 0;
    iw_report* r = nullptr;
    REQUIRE(iw_replay(ca.c_str(), &identical, &r) == IW_OK);
    CHECK(identical == 1);
    CHECK(certificate_of(r) == ca);
    iw_report_destroy(r);

    // an edited certificate still replays, but no longer matches
    std::string edited = ca;
    auto at = edited.find("\"passed\": true");
    REQUIRE(at != std::string::npos);
    edited.replace(at, 14, "\"passed\": false");
    REQUIRE(iw_replay(edited.c_str(), &identical, &r) == IW_OK);
    CHECK(identical == 0);
    iw_report_destroy(r);

    CHECK(iw_replay("{ not json", &identical, &r) == IW_ERR_PARSE);
    CHECK(iw_verify_zeta(3, 5, 1, 4, 16, nullptr, 2, 1, &r) == IW_ERR_INVALID_ARGUMENT);
    CHECK(iw_verify_zeta(3, 3, 0, 4, 16, nullptr, 0, 1, &r) != IW_OK);
}

TEST_CASE("Delta-table import") {
    const char* table =
        "F_cond 1\n"
        "p 3\n"
        "j 0\n"
        "Sigma 3\n"
        "u 1\n"
        "(1, 4, 0, 1)\n"
        "(1, 16, 0, 1)\n";
    int passed = 0;
    CHECK(iw_delta_table_check(table, 4, 16, &passed) == IW_OK);
    CHECK(passed == 1);
    CHECK(iw_delta_table_check("p 3\nbogus 1\n", 4, 16, &passed) == IW_ERR_PARSE);
    CHECK(iw_delta_table_check(nullptr, 4, 16, &passed) == IW_ERR_INVALID_ARGUMENT);
}
