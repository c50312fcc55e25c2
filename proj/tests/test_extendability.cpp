#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ssvp/extendability.hpp"
#include "ssvp/models.hpp"
#include "ssvp/potential.hpp"
#include "ssvp/quadrature.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("energy slice composition matches the closed slice") {
    auto fx = ssvp::fixture("quadratic-5.1");
    auto slice = ssvp::build_energy_slice(fx.density.value());

    CHECK(slice.cutoff_energy == doctest::Approx(fx.closed.cutoff_energy).epsilon(1e-12));
    CHECK(slice.central_potential ==
          doctest::Approx(fx.closed.central_potential).epsilon(1e-12));
    CHECK(slice.provenance == ssvp::SliceProvenance::composed);

    const double depth = slice.depth;
    for (int i = 1; i <= 30; ++i) {
        const double h = depth * (1e-3 + (1.0 - 2e-3) * i / 31.0);
        CHECK(slice.value(h) == doctest::Approx(fx.closed.slice(h)).epsilon(1e-8));
        CHECK(slice.second_derivative(h) ==
              doctest::Approx(fx.closed.slice_second(h)).epsilon(1e-6));
    }
}

TEST_CASE("wronskian pipeline agrees with fixture closed forms") {
    for (const char* name :
         {"quadratic-5.1", "squared-linear-5.2", "exponential-5.3", "quartic-5.9"}) {
        CAPTURE(name);
        auto fx = ssvp::fixture(name);
        const auto& p = fx.density.value();
        const double R = p.cutoff();
        for (int i = 1; i < 40; ++i) {
            const double r = R * i / 40.0;
            const double got = ssvp::wronskian(p, r);
            const double want = fx.closed.wronskian(r);
            CHECK(std::abs(got - want) < 1e-7 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("sufficient-condition flags per model") {
    auto flags = [](const char* name, std::map<std::string, double> params = {}) {
        return ssvp::check_sufficient(ssvp::fixture(name, params).density.value());
    };

    auto quad = flags("quadratic-5.1");
    CHECK_FALSE(quad.wronskian_positive);  // sign is strictly negative
    CHECK_FALSE(quad.laplacian_positive);

    CHECK(flags("squared-linear-5.2").wronskian_positive);
    CHECK_FALSE(flags("squared-linear-5.2").laplacian_positive);

    CHECK(flags("power-law-5.4", {{"b", 1.5}}).laplacian_positive);
    CHECK(flags("power-law-5.4", {{"b", 1.0}}).wronskian_positive);
    CHECK_FALSE(flags("power-law-5.4", {{"b", 1.0}}).laplacian_positive);
    CHECK_FALSE(flags("power-law-5.4", {{"b", 0.5}}).wronskian_positive);
    CHECK_FALSE(flags("power-law-5.4", {{"b", 0.5}}).laplacian_positive);

    CHECK(flags("exponential-5.3", {{"R", 3.0}}).wronskian_positive);
    CHECK_FALSE(flags("exponential-5.3", {{"R", 3.0}}).laplacian_positive);

    CHECK_FALSE(flags("quartic-5.9").wronskian_positive);
}

TEST_CASE("the two rate routes agree") {
    for (const char* name : {"quadratic-5.1", "squared-linear-5.2", "quartic-5.9"}) {
        CAPTURE(name);
        auto fx = ssvp::fixture(name);
        const auto& p = fx.density.value();
        ssvp::PotentialProfile profile(p);
        const double depth = profile.central_potential() - profile.cutoff_potential();
        for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double h = frac * depth;
            const double a = ssvp::distribution_rate(p, h, ssvp::RateRoute::radial);
            const double b = ssvp::distribution_rate(p, h, ssvp::RateRoute::energy);
            CHECK(std::abs(a - b) < 1e-6 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("recovered distribution matches the closed profile") {
    auto fx = ssvp::fixture("quadratic-5.1");
    const auto& p = fx.density.value();
    ssvp::PotentialProfile profile(p);
    const double depth = profile.central_potential() - profile.cutoff_potential();
    for (int i = 0; i <= 24; ++i) {
        const double h = depth * (1e-3 + (1.0 - 2e-3) * i / 24.0);
        const double got = ssvp::recover_distribution(p, h);
        const double want = fx.closed.distribution(h);
        CHECK(std::abs(got - want) < 1e-8 * std::abs(want));
    }
}

TEST_CASE("exponential wronskian chart values") {
    auto fx = ssvp::fixture("exponential-5.3", {{"R", 2.0}});
    const auto& p = fx.density.value();

    const double printed_r[] = {1e-5, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};
    const double printed_x[] = {3.6218, 2.33, 1.47, 0.910, 0.541, 0.302, 0.151, 0.056};
    for (int i = 0; i < 8; ++i) {
        CAPTURE(printed_r[i]);
        CHECK(std::abs(ssvp::wronskian(p, printed_r[i]) - printed_x[i]) < 1e-2);
    }

    // Boundary value vanishes identically, central limit from the stable form.
    CHECK(std::abs(ssvp::wronskian(p, 2.0)) < 1e-8);
    CHECK(std::abs(fx.closed.wronskian(1e-12) - 3.6220) < 1e-3);
    CHECK(std::abs(4.0 * kPi * (1.0 - std::exp(-2.0)) / 3.0 - 3.6220) < 1e-3);
}

TEST_CASE("verdicts for the fixture catalogue") {
    auto verdict = [](const char* name, std::map<std::string, double> params = {}) {
        return ssvp::extendability_verdict(ssvp::fixture(name, params).density.value(), 128);
    };

    auto quad = verdict("quadratic-5.1");
    CHECK(quad.verdict == ssvp::Verdict::extendable);
    CHECK(quad.evidence == ssvp::Evidence::distribution_positive);
    CHECK(quad.min_distribution > 0.0);
    CHECK_FALSE(quad.rate_samples.empty());
    CHECK_FALSE(quad.wronskian_samples.empty());

    auto sq = verdict("squared-linear-5.2");
    CHECK(sq.verdict == ssvp::Verdict::extendable);
    CHECK(sq.evidence == ssvp::Evidence::wronskian_positive);

    CHECK(verdict("exponential-5.3", {{"R", 2.0}}).verdict == ssvp::Verdict::extendable);
    CHECK(verdict("exponential-5.3", {{"R", 3.0}}).verdict == ssvp::Verdict::extendable);

    CHECK(verdict("power-law-5.4", {{"b", 1.0}}).verdict == ssvp::Verdict::extendable);
    CHECK(verdict("power-law-5.4", {{"b", 1.5}}).verdict == ssvp::Verdict::extendable);
    CHECK(verdict("power-law-5.4", {{"b", 2.5}}).verdict == ssvp::Verdict::extendable);

    auto quartic = verdict("quartic-5.9");
    CHECK(quartic.verdict == ssvp::Verdict::not_extendable);
    CHECK(quartic.evidence == ssvp::Evidence::distribution_negative);
    CHECK(quartic.min_distribution < 0.0);
}

TEST_CASE("quartic model: kernel sign structure along the slice") {
    auto fx = ssvp::fixture("quartic-5.9");
    const auto& p = fx.density.value();
    ssvp::PotentialProfile profile(p);

    // Zero of the wronskian between the negative and positive lobes.
    const double r1 = ssvp::bisect([&](double r) { return ssvp::wronskian(p, r); },
                                   1.0, 1.9, 1e-10);
    CHECK(std::abs(r1 - 1.3575585) < 2e-6);

    const double phi = 0.01;
    const double h_ref = profile(phi) - profile.cutoff_potential();
    auto J = [&](double r) {
        return ssvp::wronskian(p, r) / std::pow(profile.derivative(r), 2) *
               std::sqrt(h_ref / (profile(phi) - profile(r)));
    };
    auto g1 = [](double r) { return 4.0 / 0.3 * (r - 0.31); };
    auto g2 = [](double r) { return 1.21 / 0.7 * (r - 1.3); };

    // Chord-minus-integrand tables; the first printed entry carries a larger
    // uncertainty than the rest of the row.
    const double r_lo[] = {0.1, 0.15, 0.175, 0.2, 0.31};
    const double lo_printed[] = {0.832, 0.182, 0.129, 0.173, 0.937};
    CHECK(std::abs(g1(r_lo[0]) - J(r_lo[0]) - lo_printed[0]) < 0.05);
    for (int i = 1; i < 5; ++i) {
        CAPTURE(r_lo[i]);
        CHECK(std::abs(g1(r_lo[i]) - J(r_lo[i]) - lo_printed[i]) < 0.002);
    }

    const double r_hi[] = {1.3, 1.5, 1.7, 1.9, 2.0};
    const double hi_printed[] = {0.027, 0.256, 0.369, 0.225, 0.004};
    for (int i = 0; i < 5; ++i) {
        CAPTURE(r_hi[i]);
        CHECK(std::abs(g2(r_hi[i]) - J(r_hi[i]) - hi_printed[i]) < 0.002);
    }

    // Chord bounds observed on the sampled lobes.
    for (double r : {0.05, 0.1, 0.2, 0.3}) {
        CHECK(J(r) < g1(r));
        CHECK(g1(r) < 0.0);
    }
    for (double r : {1.36, 1.5, 1.8, 1.99}) {
        CHECK(J(r) > 0.0);
        CHECK(J(r) < g2(r));
    }
}
