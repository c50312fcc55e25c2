#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <ssvp.h>

namespace {
constexpr double kPi = 3.14159265358979323846;

double two_sqrt(double x, void*) { return 2.0 * std::sqrt(x); }
}  // namespace

TEST_CASE("version and catalogue") {
    CHECK(ssvp_version() != nullptr);
    char* json = nullptr;
    REQUIRE(ssvp_models_list_json(&json) == SSVP_OK);
    REQUIRE(json != nullptr);
    CHECK(std::strstr(json, "quartic-5.9") != nullptr);
    CHECK(std::strstr(json, "sqrt-q-5.8") != nullptr);
    ssvp_free(json);
}

TEST_CASE("open, evaluate, and error mapping") {
    ssvp_model* m = nullptr;
    REQUIRE(ssvp_model_open("quadratic-5.1", nullptr, &m) == SSVP_OK);
    double v = 0.0;
    CHECK(ssvp_model_eval(m, "density", 0.0, &v) == SSVP_OK);
    CHECK(v == 1.0);
    CHECK(ssvp_model_eval(m, "potential", 0.0, &v) == SSVP_OK);
    CHECK(std::abs(v - kPi * 64.0) < 1e-9);
    CHECK(ssvp_model_eval(m, "wronskian", 4.0, &v) == SSVP_OK);
    CHECK(std::abs(v + 16.0 * kPi * 64.0 / (5.0 * 4096.0)) < 1e-8);
    CHECK(ssvp_model_eval(m, "nope", 1.0, &v) == SSVP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(ssvp_last_error()).size() > 0);

    ssvp_model* bad = nullptr;
    CHECK(ssvp_model_open("nope", nullptr, &bad) == SSVP_ERR_INVALID_ARGUMENT);
    CHECK(ssvp_model_open("power-law-5.4", "{\"b\": 3.5}", &bad) == SSVP_ERR_DOMAIN);
    CHECK(ssvp_model_open("quadratic-5.1", "not json", &bad) ==
          SSVP_ERR_INVALID_ARGUMENT);
    ssvp_model_close(m);
}

TEST_CASE("inverse run artifacts") {
    ssvp_model* m = nullptr;
    REQUIRE(ssvp_model_open("quadratic-5.1", nullptr, &m) == SSVP_OK);
    ssvp_report* rep = nullptr;
    REQUIRE(ssvp_inverse_run(m, 64, &rep) == SSVP_OK);

    const char* verdict = nullptr;
    CHECK(ssvp_report_verdict(rep, &verdict) == SSVP_OK);
    CHECK(std::string(verdict) == "extendable");
    const char* evidence = nullptr;
    CHECK(ssvp_report_evidence(rep, &evidence) == SSVP_OK);
    CHECK(std::string(evidence) == "distribution-positive");

    char* csv = nullptr;
    REQUIRE(ssvp_report_csv(rep, "wronskian", &csv) == SSVP_OK);
    CHECK(std::strncmp(csv, "r,wronskian", 11) == 0);
    ssvp_free(csv);
    REQUIRE(ssvp_report_csv(rep, "distribution", &csv) == SSVP_OK);
    CHECK(std::strstr(csv, "quadrature_error") != nullptr);
    ssvp_free(csv);

    char* json = nullptr;
    REQUIRE(ssvp_report_json(rep, &json) == SSVP_OK);
    CHECK(std::strstr(json, "\"verdict\": \"extendable\"") != nullptr);
    ssvp_free(json);
    ssvp_report_close(rep);
    ssvp_model_close(m);
}

TEST_CASE("direct ladder artifacts and determinism") {
    ssvp_model* m = nullptr;
    REQUIRE(ssvp_model_open("quadratic-5.1", nullptr, &m) == SSVP_OK);
    ssvp_ladder* lad = nullptr;
    REQUIRE(ssvp_direct_run(m, 8.0, 8, &lad) == SSVP_OK);

    size_t levels = 0;
    REQUIRE(ssvp_ladder_levels(lad, &levels) == SSVP_OK);
    REQUIRE(levels == 4);

    int n = 0, conv = 0;
    double e0 = 0.0, l2 = 0.0;
    REQUIRE(ssvp_ladder_level_info(lad, 3, &n, &conv, &e0, &l2) == SSVP_OK);
    CHECK(n == 8);
    CHECK(conv == 1);
    CHECK(std::abs(e0 - 105.0519) < 0.01);
    CHECK(l2 > 0.03);
    CHECK(l2 < 0.035);

    double buf[8];
    size_t written = 0;
    REQUIRE(ssvp_ladder_solution(lad, 3, buf, 8, &written) == SSVP_OK);
    REQUIRE(written == 8);
    CHECK(std::abs(buf[0] - 0.989) < 5e-4);

    char* csv1 = nullptr;
    REQUIRE(ssvp_ladder_csv(lad, &csv1) == SSVP_OK);
    CHECK(std::strstr(csv1, "ref_minus_finest") != nullptr);
    CHECK(std::strstr(csv1, "e0_error_pct") != nullptr);

    char* json = nullptr;
    REQUIRE(ssvp_ladder_json(lad, &json) == SSVP_OK);
    CHECK(std::strstr(json, "\"levels\"") != nullptr);
    ssvp_free(json);
    ssvp_ladder_close(lad);

    // Re-running the same configuration reproduces the artifact bytes.
    ssvp_ladder* lad2 = nullptr;
    REQUIRE(ssvp_direct_run(m, 8.0, 8, &lad2) == SSVP_OK);
    char* csv2 = nullptr;
    REQUIRE(ssvp_ladder_csv(lad2, &csv2) == SSVP_OK);
    CHECK(std::string(csv1) == std::string(csv2));
    ssvp_free(csv1);
    ssvp_free(csv2);
    ssvp_ladder_close(lad2);
    ssvp_model_close(m);
}

TEST_CASE("usage errors surface as invalid-argument") {
    ssvp_model* m = nullptr;
    REQUIRE(ssvp_model_open("quartic-5.9", nullptr, &m) == SSVP_OK);
    ssvp_ladder* lad = nullptr;
    CHECK(ssvp_direct_run(m, 2.0, 4, &lad) == SSVP_ERR_INVALID_ARGUMENT);
    ssvp_model_close(m);

    REQUIRE(ssvp_model_open("sqrt-q-5.8", nullptr, &m) == SSVP_OK);
    double v = 0.0;
    CHECK(ssvp_model_cutoff(m, &v) == SSVP_ERR_INVALID_ARGUMENT);
    CHECK(ssvp_model_eval(m, "distribution", 4.0, &v) == SSVP_OK);
    CHECK(v > 0.0);
    ssvp_report* rep = nullptr;
    CHECK(ssvp_inverse_run(m, 0, &rep) == SSVP_ERR_INVALID_ARGUMENT);
    ssvp_model_close(m);
}

TEST_CASE("callback transform") {
    double xs[12], fs[12];
    REQUIRE(ssvp_transform("abel-invert", two_sqrt, nullptr, 4.0, 12, xs, fs) ==
            SSVP_OK);
    for (int i = 0; i < 12; ++i) {
        CAPTURE(i);
        CHECK(std::abs(fs[i] - 1.0) < 1e-6);
    }
    CHECK(ssvp_transform("nope", two_sqrt, nullptr, 1.0, 1, xs, fs) ==
          SSVP_ERR_INVALID_ARGUMENT);
}
