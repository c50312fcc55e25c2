#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ssvp/collocation.hpp"
#include "ssvp/models.hpp"
#include "ssvp/potential.hpp"
#include "ssvp/quadrature.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 4.0 * kPi;

double hat_value(int k, int n, double R, double s)
{
    const double h = R / n;
    const double t = std::abs(s / h - k);
    return t < 1.0 ? 1.0 - t : 0.0;
}

/// Potential of the k-th hat at radius r by piecewise quadrature: an
/// evaluation route that never touches the closed segment algebra.
double hat_potential_by_quadrature(int k, int n, double R, double r)
{
    const double h = R / n;
    std::vector<double> cuts{0.0, r, R};
    for (int j = k - 1; j <= k + 1; ++j) {
        const double c = j * h;
        if (c > 0.0 && c < R)
            cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());

    double inner = 0.0, outer = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b <= a)
            continue;
        if (b <= r)
            inner += ssvp::integrate_refining(
                         [&](double s) { return hat_value(k, n, R, s) * s * s; }, a, b,
                         1e-14)
                         .value;
        if (a >= r)
            outer += ssvp::integrate_refining(
                         [&](double s) { return hat_value(k, n, R, s) * s; }, a, b, 1e-14)
                         .value;
    }
    return kFourPi * ((r > 0.0 ? inner / r : 0.0) + outer);
}

double polygon_potential_by_quadrature(const ssvp::RadialDensity& poly, double r)
{
    const double R = poly.cutoff();
    auto inner = ssvp::integrate_adaptive(
        [&](double s) { return poly(s) * s * s; }, 0.0, std::min(r, R), 1e-12);
    double outer = 0.0;
    if (r < R)
        outer = ssvp::integrate_adaptive([&](double s) { return poly(s) * s; }, r, R,
                                         1e-12)
                    .value;
    return kFourPi * ((r > 0.0 ? inner.value / r : 0.0) + outer);
}

}  // namespace

TEST_CASE("segment potentials match hand-computed moments") {
    using SK = ssvp::SegmentKind;
    CHECK(ssvp::segment_potential(SK::interior_fall, 0.0, 1.0, 0.0) ==
          doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-13));
    CHECK(ssvp::segment_potential(SK::exterior_fall, 0.0, 1.0, 2.0) ==
          doctest::Approx(kPi / 6.0).epsilon(1e-13));

    // Quadrature cross-checks with generic parameters.
    const double e0 = 0.3, e1 = 0.9;
    auto rise = [&](double s) { return (s - e0) / (e1 - e0); };
    auto fall = [&](double s) { return (e1 - s) / (e1 - e0); };

    // Interior: the evaluation radius sits below the segment, so only the
    // s-weighted moment contributes.
    const double ri = 0.15;
    const double want_ir =
        kFourPi * ssvp::integrate_refining([&](double s) { return rise(s) * s; }, e0, e1, 1e-14).value;
    CHECK(ssvp::segment_potential(SK::interior_rise, e0, e1, ri) ==
          doctest::Approx(want_ir).epsilon(1e-12));
    const double want_if =
        kFourPi * ssvp::integrate_refining([&](double s) { return fall(s) * s; }, e0, e1, 1e-14).value;
    CHECK(ssvp::segment_potential(SK::interior_fall, e0, e1, ri) ==
          doctest::Approx(want_if).epsilon(1e-12));

    // Exterior: all mass lies inside, only the s^2 moment over r survives.
    const double re = 2.7;
    const double want_er =
        kFourPi / re *
        ssvp::integrate_refining([&](double s) { return rise(s) * s * s; }, e0, e1, 1e-14).value;
    CHECK(ssvp::segment_potential(SK::exterior_rise, e0, e1, re) ==
          doctest::Approx(want_er).epsilon(1e-12));
    const double want_ef =
        kFourPi / re *
        ssvp::integrate_refining([&](double s) { return fall(s) * s * s; }, e0, e1, 1e-14).value;
    CHECK(ssvp::segment_potential(SK::exterior_fall, e0, e1, re) ==
          doctest::Approx(want_ef).epsilon(1e-12));
}

TEST_CASE("segment ordering violations are rejected") {
    using SK = ssvp::SegmentKind;
    CHECK_THROWS_AS(ssvp::segment_potential(SK::interior_rise, 0.5, 0.5, 0.1),
                    std::domain_error);
    CHECK_THROWS_AS(ssvp::segment_potential(SK::interior_rise, 0.5, 1.0, 0.7),
                    std::domain_error);
    CHECK_THROWS_AS(ssvp::segment_potential(SK::exterior_rise, 0.5, 1.0, 0.7),
                    std::domain_error);
    CHECK_THROWS_AS(ssvp::segment_potential(SK::interior_rise, -0.1, 1.0, 0.0),
                    std::domain_error);
}

TEST_CASE("hat potential entries match hand-computed values at n = 2") {
    const auto B = ssvp::hat_potential_matrix(2, 8.0);
    REQUIRE(B.rows() == 2);
    REQUIRE(B.cols() == 2);
    CHECK(B(0, 0) == doctest::Approx(32.0 * kPi / 3.0).epsilon(1e-13));
    CHECK(B(0, 1) == doctest::Approx(64.0 * kPi).epsilon(1e-13));
    CHECK(B(1, 0) == doctest::Approx(16.0 * kPi / 3.0).epsilon(1e-13));
    CHECK(B(1, 1) == doctest::Approx(176.0 * kPi / 3.0).epsilon(1e-13));

    const auto C = ssvp::hat_cutoff_potentials(2, 8.0);
    REQUIRE(C.size() == 2);
    CHECK(C(0) == doctest::Approx(8.0 * kPi / 3.0).epsilon(1e-13));
    CHECK(C(1) == doctest::Approx(112.0 * kPi / 3.0).epsilon(1e-13));
}

TEST_CASE("matrix assembly agrees with the quadrature route") {
    for (int n : {2, 4, 8}) {
        CAPTURE(n);
        const double R = 8.0;
        const auto B = ssvp::hat_potential_matrix(n, R);
        const auto C = ssvp::hat_cutoff_potentials(n, R);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const double q = hat_potential_by_quadrature(k, n, R, i * R / n);
                CHECK(std::abs(B(i, k) - q) < 1e-10 * std::abs(q));
            }
            const double qc = hat_potential_by_quadrature(i, n, R, R);
            CHECK(std::abs(C(i) - qc) < 1e-10 * std::abs(qc));
        }
    }
}

TEST_CASE("assembly scales as the square of the cutoff radius") {
    for (int n : {2, 8, 32}) {
        CAPTURE(n);
        const double R = 5.75;
        const auto big = ssvp::hat_potential_matrix(n, R);
        const auto unit = ssvp::hat_potential_matrix(n, 1.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                CHECK(std::abs(big(i, k) - R * R * unit(i, k)) <=
                      1e-13 * R * R * std::abs(unit(i, k)));

        const auto bigC = ssvp::hat_cutoff_potentials(n, R);
        const auto unitC = ssvp::hat_cutoff_potentials(n, 1.0);
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(bigC(i) - R * R * unitC(i)) <= 1e-13 * R * R * unitC(i));
    }
}

TEST_CASE("single-node equations have the expected roots") {
    auto quad = ssvp::fixture("quadratic-5.1");
    auto one = ssvp::refinement_ladder(quad.map.value(), 8.0, 1);
    REQUIRE(one.size() == 1);
    REQUIRE(one[0].converged);
    CHECK(one[0].solution(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(one[0].cutoff_energy == doctest::Approx(22.3402).epsilon(1e-4));

    auto sq = ssvp::fixture("sqrt-q-5.8");
    auto root = ssvp::refinement_ladder(sq.map.value(), 8.0, 1);
    REQUIRE(root[0].converged);
    CHECK(root[0].solution(0) == doctest::Approx(35.15625).epsilon(1e-6));
}

TEST_CASE("quadratic-profile ladder regression") {
    auto fx = ssvp::fixture("quadratic-5.1");
    const double R = 8.0;
    auto reference = [R](double r) { return 1.0 - (r / R) * (r / R); };
    auto ladder = ssvp::refinement_ladder(fx.map.value(), R, 128, reference);
    REQUIRE(ladder.size() == 8);

    const double e0n[] = {22.3402, 79.1142, 98.9415,  105.052,
                          106.68,  107.094, 107.198, 107.224};
    const double l2[] = {1.52995,    0.45389,    0.125986,    0.0323721,
                         0.00814563, 0.00203962, 0.000510103, 0.000127538};
    const double indicator[] = {4.48, 1.37, 0.234, 0.0537, 0.0131, 0.00327, 0.000816};

    for (int l = 0; l < 8; ++l) {
        CAPTURE(l);
        REQUIRE(ladder[l].converged);
        CHECK(ladder[l].n == 1 << l);
        CHECK(ladder[l].cutoff_energy == doctest::Approx(e0n[l]).epsilon(1e-5));
        CHECK(ladder[l].l2_error == doctest::Approx(l2[l]).epsilon(1e-4));
        CHECK(ladder[l].solution.minCoeff() > 0.0);
        if (l >= 1)
            CHECK(ladder[l].kantorovich.indicator ==
                  doctest::Approx(indicator[l - 1]).epsilon(5e-2));
    }

    // Exact limit of the cutoff energies.
    const double exact = 512.0 * kPi / 15.0;
    CHECK(std::abs(ladder[7].cutoff_energy - exact) / exact < 1e-4);

    // Quadratic convergence of the L2 errors over the last refinements.
    for (int l = 4; l < 7; ++l) {
        const double ratio = ladder[l].l2_error / ladder[l + 1].l2_error;
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }

    // Start-point test: semi-local convergence is rejected at the two
    // coarsest refinements and certified from n = 8 on.
    CHECK(ladder[1].kantorovich.status == ssvp::KantorovichStatus::failed);
    CHECK(ladder[2].kantorovich.status == ssvp::KantorovichStatus::failed);
    for (int l = 3; l < 8; ++l)
        CHECK(ladder[l].kantorovich.status == ssvp::KantorovichStatus::satisfied);

    // Spot cells of the printed table (finest columns at the centre and at
    // the first interior print radius). One printed cell drops its leading
    // digit (0.06414 for 0.96414); the corrected value is asserted.
    const auto& x128 = ladder[7].solution;
    CHECK(std::abs(x128(0) - 0.99995) < 5e-4);
    const auto& x32 = ladder[5].solution;
    auto poly32 = ssvp::polygon_to_density(x32, 32, R);
    CHECK(std::abs(poly32(1.5) - 0.96414) < 5e-4);
    CHECK(std::abs(reference(0.0) - x128(0) - 4.5e-5) < 1e-5);
}

TEST_CASE("sqrt-profile ladder regression") {
    auto fx = ssvp::fixture("sqrt-q-5.8");
    const double R = 8.0;
    auto ladder = ssvp::refinement_ladder(fx.map.value(), R, 128);
    REQUIRE(ladder.size() == 8);

    const double e0n[] = {2356.19, 2657.29, 2155.15, 2081.02,
                          2065.49, 2061.87, 2060.98, 2060.76};
    const double norms[] = {57.4099, 80.1878, 102.73,  117.769,
                            122.826, 124.204, 124.557, 124.646};

    for (int l = 0; l < 8; ++l) {
        CAPTURE(l);
        REQUIRE(ladder[l].converged);
        CHECK(ladder[l].cutoff_energy == doctest::Approx(e0n[l]).epsilon(2e-5));
        const double norm = ssvp::l2_error(ladder[l].solution, ladder[l].n, R,
                                           [](double) { return 0.0; });
        CHECK(norm == doctest::Approx(norms[l]).epsilon(1e-4));
        if (l >= 1) {
            // The closed map's curvature is unbounded near zero: the
            // semi-local test must report finite constants yet never certify.
            CHECK(ladder[l].kantorovich.status == ssvp::KantorovichStatus::failed);
            CHECK(std::isfinite(ladder[l].kantorovich.indicator));
            CHECK(ladder[l].kantorovich.indicator > 0.5);
        }
    }

    CHECK(ladder[7].solution(0) == doctest::Approx(87.62698).epsilon(1e-5));
    CHECK(ladder[7].cutoff_energy == doctest::Approx(2060.75).epsilon(1e-3));

    // Printed finest-level cells at the half-way and outermost print radii.
    CHECK(ladder[7].solution(64) == doctest::Approx(19.61535).epsilon(5e-5));
    CHECK(ladder[5].solution(12) == doctest::Approx(37.14661).epsilon(5e-5));
}

TEST_CASE("polygon solutions satisfy the integral equation independently") {
    auto fx = ssvp::fixture("quadratic-5.1");
    const double R = 8.0;
    auto ladder = ssvp::refinement_ladder(fx.map.value(), R, 16);
    const auto& rep = ladder.back();
    REQUIRE(rep.converged);
    auto poly = ssvp::polygon_to_density(rep.solution, rep.n, R);
    const double pR = polygon_potential_by_quadrature(poly, R);
    for (int i : {0, 4, 8, 12}) {
        const double xi = i * R / rep.n;
        const double lhs = polygon_potential_by_quadrature(poly, xi) - pR;
        const double rhs = fx.map.value().value(rep.solution(i));
        CHECK(std::abs(lhs - rhs) < 1e-6 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("tabulated map from the distribution matches the closed map") {
    auto fx = ssvp::fixture("sqrt-q-5.8");
    const double c = fx.parameters.at("c");
    auto q = [c](double s) { return c * std::sqrt(s); };
    auto numeric = ssvp::energy_map_from_distribution(q, 4000.0);
    CHECK(numeric.provenance == ssvp::MapProvenance::numeric_inverse);

    const auto& closed = fx.map.value();
    for (double t : {0.5, 5.0, 20.0, 60.0, 87.0}) {
        CAPTURE(t);
        CHECK(numeric.value(t) == doctest::Approx(closed.value(t)).epsilon(1e-8));
        CHECK(numeric.derivative(t) == doctest::Approx(closed.derivative(t)).epsilon(1e-8));
    }

    // A short ladder through the numeric map lands on the closed-map run.
    auto closed_run = ssvp::refinement_ladder(closed, 8.0, 16);
    auto numeric_run = ssvp::refinement_ladder(numeric, 8.0, 16);
    REQUIRE(closed_run.back().converged);
    REQUIRE(numeric_run.back().converged);
    CHECK(numeric_run.back().cutoff_energy ==
          doctest::Approx(closed_run.back().cutoff_energy).epsilon(1e-6));
    // No curvature information on the tabulated route.
    CHECK(numeric_run.back().kantorovich.status ==
          ssvp::KantorovichStatus::not_evaluated);
}
