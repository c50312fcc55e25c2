#include "ssvp/extendability.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "ssvp/potential.hpp"
#include "ssvp/quadrature.hpp"

namespace ssvp {

namespace {

// (1/(4 pi sqrt2)) * (2/pi)
constexpr double kRateToDistribution =
    std::numbers::sqrt2_v<double> / (4.0 * M_PI * M_PI);

struct RateResult {
    double value = 0.0;
    double error = 0.0;
};

// Radial evaluation. The kernel vanishes like sqrt(r - phi) at the inversion
// point, so the integral is taken in t with r = phi + t^2; the singular
// factor t/sqrt(P(phi) - P(r)) is then formed through a divided difference
// once direct subtraction loses digits, and never collapses to 0/0.
RateResult rate_radial(const RadialDensity& p, const PotentialProfile& prof,
                       double h)
{
    const double R = p.cutoff();
    const double E0 = prof.cutoff_potential();
    const double depth = prof.central_potential() - E0;
    if (!(h > 0.0) || !(h < depth))
        throw std::domain_error("distribution rate: depth outside (0, P(0)-E0)");

    const double phi = prof.invert(h + E0);
    const double p_phi = prof(phi); // realized value: pins the kernel zero
    const double hh = p_phi > E0 ? p_phi - E0 : h;
    const double boundary =
        p.derivative(R) / prof.derivative(R) / std::sqrt(hh);
    if (phi >= R)
        return {boundary, 0.0}; // inversion hit the cutoff: empty interval

    const auto integrand = [&](double t) {
        const double r = phi + t * t;
        const double direct = p_phi - prof(r);
        double ratio; // t / sqrt(P(phi) - P(r)), the de-singularised kernel
        if (std::abs(direct) > 1e-6 * std::abs(p_phi))
            ratio = t / std::sqrt(direct);
        else
            ratio = 1.0 / std::sqrt(-prof.derivative(phi + 0.5 * t * t));
        const double dP = prof.derivative(r);
        return 2.0 * wronskian(p, r) / (dP * dP) * ratio;
    };
    const Quadrature q =
        integrate_refining(integrand, 0.0, std::sqrt(R - phi), 1e-10);
    return {boundary + q.value, q.error};
}

// Depth-space evaluation: substituting s = h - u^2 removes the kernel
// exactly, leaving 2 * integral_0^sqrt(h) F0''(h - u^2) du.
RateResult rate_energy(const RadialDensity& p, const PotentialProfile& prof,
                       double h)
{
    const double R = p.cutoff();
    const double E0 = prof.cutoff_potential();
    const double depth = prof.central_potential() - E0;
    if (!(h > 0.0) || !(h < depth))
        throw std::domain_error("distribution rate: depth outside (0, P(0)-E0)");

    const auto curvature = [&](double s) {
        const double r = prof.invert(s + E0);
        const double dP = prof.derivative(r);
        return wronskian(p, r) / std::pow(std::abs(dP), 3.0);
    };
    const auto integrand = [&](double u) { return curvature(h - u * u); };
    const Quadrature q =
        integrate_refining(integrand, 0.0, std::sqrt(h), 1e-10);
    const double boundary =
        p.derivative(R) / prof.derivative(R) / std::sqrt(h);
    return {boundary + 2.0 * q.value, 2.0 * q.error};
}

RateResult rate_impl(const RadialDensity& p, const PotentialProfile& prof,
                     double h, RateRoute route)
{
    return route == RateRoute::radial ? rate_radial(p, prof, h)
                                      : rate_energy(p, prof, h);
}

void require_strictly_decreasing(const RadialDensity& p)
{
    const double R = p.cutoff();
    const int grid = 2048;
    double prev = p(0.0);
    for (int i = 1; i < grid; ++i) {
        const double r = R * i / grid;
        const double cur = p(r);
        if (!(cur < prev))
            throw std::invalid_argument(
                "energy slice: density is not strictly decreasing");
        prev = cur;
    }
}

} // namespace

EnergySlice build_energy_slice(const RadialDensity& p)
{
    require_strictly_decreasing(p);
    auto prof = std::make_shared<PotentialProfile>(p);

    EnergySlice slice;
    slice.cutoff_energy = prof->cutoff_potential();
    slice.central_potential = prof->central_potential();
    slice.depth = slice.central_potential - slice.cutoff_energy;
    slice.provenance = SliceProvenance::composed;

    const double E0 = slice.cutoff_energy;
    RadialDensity density = p;
    slice.value = [prof, density, E0](double h) {
        return density(prof->invert(h + E0));
    };
    slice.derivative = [prof, density, E0](double h) {
        const double r = prof->invert(h + E0);
        return density.derivative(r) / prof->derivative(r);
    };
    slice.second_derivative = [prof, density, E0](double h) {
        const double r = prof->invert(h + E0);
        const double dP = prof->derivative(r);
        return wronskian(density, r) / std::pow(std::abs(dP), 3.0);
    };
    return slice;
}

double wronskian(const RadialDensity& p, double r)
{
    if (!(r > 0.0))
        throw std::domain_error("wronskian: needs r > 0");
    return p.derivative(r) * potential_second_derivative(p, r) -
           p.second_derivative(r) * potential_derivative(p, r);
}

SufficientFlags check_sufficient(const RadialDensity& p, std::size_t grid)
{
    if (grid == 0)
        throw std::invalid_argument("check_sufficient: empty grid");
    const double R = p.cutoff();
    SufficientFlags flags;
    flags.wronskian_positive = true;
    flags.laplacian_positive = true;
    for (std::size_t i = 0; i < grid; ++i) {
        const double r = R * (i + 0.5) / grid;
        if (!(wronskian(p, r) > 0.0))
            flags.wronskian_positive = false;
        const double lap = (2.0 / r) * p.derivative(r) + p.second_derivative(r);
        if (!(lap > 0.0))
            flags.laplacian_positive = false;
        if (!flags.wronskian_positive && !flags.laplacian_positive)
            break;
    }

    // Convexity of the slice, probed on its own (depth) grid so the check is
    // genuinely independent of the radial sweep above. A cuspy profile has an
    // unbounded depth range; cap it at the depth seen just off the center.
    EnergySlice slice = build_energy_slice(p);
    double top = slice.depth;
    if (!std::isfinite(top)) {
        PotentialProfile prof(p);
        top = prof(1e-6 * R) - slice.cutoff_energy;
    }
    flags.slice_convex = true;
    const std::size_t hgrid = std::min<std::size_t>(grid, 2048);
    for (std::size_t i = 0; i < hgrid; ++i) {
        const double h = top * (i + 0.5) / hgrid;
        if (!(slice.second_derivative(h) > 0.0)) {
            flags.slice_convex = false;
            break;
        }
    }
    return flags;
}

double distribution_rate(const RadialDensity& p, double h, RateRoute route)
{
    PotentialProfile prof(p);
    return rate_impl(p, prof, h, route).value;
}

double recover_distribution(const RadialDensity& p, double h)
{
    PotentialProfile prof(p);
    return kRateToDistribution * rate_radial(p, prof, h).value;
}

ExtendabilityReport extendability_verdict(const RadialDensity& p,
                                          std::size_t grid)
{
    if (!p.has_analytic_derivatives())
        throw std::invalid_argument(
            "extendability verdict: needs analytic derivative data");
    require_strictly_decreasing(p);

    ExtendabilityReport report;
    PotentialProfile prof(p);
    report.cutoff_energy = prof.cutoff_potential();
    report.central_potential = prof.central_potential();
    const double R = p.cutoff();

    for (int i = 0; i < 64; ++i) {
        const double r = R * (i + 0.5) / 64.0;
        report.wronskian_samples.emplace_back(r, wronskian(p, r));
    }

    const SufficientFlags flags = check_sufficient(p);
    if (flags.laplacian_positive) {
        report.verdict = Verdict::extendable;
        report.evidence = Evidence::laplacian_positive;
        return report;
    }
    if (flags.wronskian_positive || flags.slice_convex) {
        report.verdict = Verdict::extendable;
        report.evidence = flags.wronskian_positive
                              ? Evidence::wronskian_positive
                              : Evidence::slice_convexity;
        return report;
    }

    const double depth = report.central_potential - report.cutoff_energy;
    if (!std::isfinite(depth))
        throw std::domain_error(
            "extendability verdict: needs a finite central potential");

    std::vector<double> probes;
    for (int k = 1; k <= 40; ++k) {
        probes.push_back(depth * std::ldexp(1.0, -k));
        probes.push_back(depth * (1.0 - std::ldexp(1.0, -k)));
    }
    for (std::size_t i = 0; i < grid; ++i)
        probes.push_back(depth * (i + 0.5) / grid);

    bool all_positive_certified = true;
    bool negative_certified = false;
    double min_q = std::numeric_limits<double>::infinity();
    double min_at = 0.0;
    for (double h : probes) {
        const RateResult rate = rate_radial(p, prof, h);
        report.rate_samples.push_back({h, rate.value, rate.error});
        const double q = kRateToDistribution * rate.value;
        const double err = kRateToDistribution * rate.error;
        if (q < min_q) {
            min_q = q;
            min_at = h;
        }
        const bool certified = err < 0.5 * std::abs(q);
        if (q < 0.0 && certified)
            negative_certified = true;
        if (!(q > 0.0 && certified))
            all_positive_certified = false;
    }
    report.min_distribution = min_q;
    report.min_location = min_at;

    if (negative_certified) {
        report.verdict = Verdict::not_extendable;
        report.evidence = Evidence::distribution_negative;
    } else if (all_positive_certified) {
        report.verdict = Verdict::extendable;
        report.evidence = Evidence::distribution_positive;
    } else {
        report.verdict = Verdict::inconclusive;
        report.evidence = Evidence::none;
    }
    return report;
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::extendable:
        return "extendable";
    case Verdict::not_extendable:
        return "not-extendable";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

const char* to_string(Evidence e)
{
    switch (e) {
    case Evidence::none:
        return "none";
    case Evidence::laplacian_positive:
        return "laplacian-positive";
    case Evidence::wronskian_positive:
        return "wronskian-positive";
    case Evidence::slice_convexity:
        return "slice-convexity";
    case Evidence::distribution_positive:
        return "distribution-positive";
    case Evidence::distribution_negative:
        return "distribution-negative";
    }
    return "?";
}

} // namespace ssvp
