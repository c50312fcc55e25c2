#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "ssvp/density.hpp"

namespace ssvp {

enum class SliceProvenance { closed_form, composed };

/// The density seen as a function of energy depth below the cutoff
/// potential: value(h) = p(P^-1(h + E0)) on [0, P(0) - E0).
struct EnergySlice {
    double cutoff_energy = 0.0;      ///< E0 = P(R)
    double central_potential = 0.0;  ///< P(0), +inf for cuspy profiles
    double depth = 0.0;              ///< P(0) - E0, the domain upper bound
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::function<double(double)> second_derivative;
    SliceProvenance provenance = SliceProvenance::composed;
};

/// Composes the density with the inverse potential. Rejects densities that
/// are not strictly decreasing (the composition is ill-defined there).
EnergySlice build_energy_slice(const RadialDensity& p);

/// p'(r) P''(r) - p''(r) P'(r): the slice is convex at the matching depth
/// exactly where this is positive (its sign is the extendability pivot).
double wronskian(const RadialDensity& p, double r);

/// The three pointwise sufficient conditions, each certified on its own
/// sample grid. convexity <=> positive wronskian; a positive radial
/// laplacian of p implies both.
struct SufficientFlags {
    bool slice_convex = false;        ///< second derivative of the slice > 0
    bool wronskian_positive = false;  ///< wronskian > 0 on (0, R)
    bool laplacian_positive = false;  ///< (2/r) p' + p'' > 0 on (0, R)
};
SufficientFlags check_sufficient(const RadialDensity& p,
                                 std::size_t grid = 10000);

enum class RateRoute {
    radial,  ///< integrate in radius, kernel zero pinned at the inverse image
    energy,  ///< integrate in depth against the slice derivatives
};

/// d/dh of the half-integral of the slice derivative; its sign decides
/// extendability. The two routes are independent evaluations of the same
/// quantity and are kept separate deliberately for cross-checking.
double distribution_rate(const RadialDensity& p, double h,
                         RateRoute route = RateRoute::radial);

/// The microscopic distribution: (1/(4 pi sqrt(2))) (2/pi) times the rate.
double recover_distribution(const RadialDensity& p, double h);

enum class Verdict { extendable, not_extendable, inconclusive };

enum class Evidence {
    none,
    laplacian_positive,     ///< (2/r) p' + p'' > 0 everywhere sampled
    wronskian_positive,     ///< wronskian > 0 everywhere sampled
    slice_convexity,        ///< slice second derivative > 0 everywhere sampled
    distribution_positive,  ///< every sampled q certified positive
    distribution_negative,  ///< some sampled q certified negative
};

struct RateSample {
    double h = 0.0;      ///< energy depth
    double value = 0.0;  ///< rate at h
    double error = 0.0;  ///< quadrature error estimate
};

struct ExtendabilityReport {
    Verdict verdict = Verdict::inconclusive;
    Evidence evidence = Evidence::none;
    std::vector<std::pair<double, double>> wronskian_samples;  ///< (r, value)
    std::vector<RateSample> rate_samples;
    double min_distribution = 0.0;  ///< smallest sampled q
    double min_location = 0.0;      ///< its depth h
    double cutoff_energy = 0.0;
    double central_potential = 0.0;
};

/// Decides extendability: sufficient conditions first, then a sampled sign
/// sweep of the recovered distribution on a grid log-dense at both ends.
/// A not_extendable verdict requires a sample whose quadrature error is
/// less than half its magnitude; extendable-by-sampling requires the same
/// certification of every positive sample; anything else is inconclusive.
ExtendabilityReport extendability_verdict(const RadialDensity& p,
                                          std::size_t grid = 256);

const char* to_string(Verdict v);
const char* to_string(Evidence e);

} // namespace ssvp
