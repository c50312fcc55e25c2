#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssvp/collocation.hpp"
#include "ssvp/density.hpp"

namespace ssvp {

/// Expected extendability classification of a built-in profile.
/// regime_dependent marks families whose sign conditions switch with the
/// parameters; those are excluded from automatic verdict regression.
enum class ModelTag { extendable, not_extendable, regime_dependent };

/// Closed-form reference curves for a fixture. Every member may be empty;
/// tests diff the populated ones against the generic numerical pipeline.
struct ClosedForms {
    std::function<double(double)> potential;             ///< P(r)
    std::function<double(double)> potential_derivative;  ///< P'(r)
    std::function<double(double)> potential_inverse;     ///< radius at a potential value
    std::function<double(double)> wronskian;             ///< p'P'' - p''P'
    std::function<double(double)> slice;                 ///< density level at depth h
    std::function<double(double)> slice_second;          ///< its second derivative
    std::function<double(double)> distribution;          ///< q(h)
    double cutoff_energy = std::numeric_limits<double>::quiet_NaN();
    double central_potential = std::numeric_limits<double>::quiet_NaN();
};

struct ModelFixture {
    std::string name;
    std::map<std::string, double> parameters;
    std::optional<RadialDensity> density;  ///< absent for the q-only fixture
    ClosedForms closed;
    std::optional<EnergyMap> map;  ///< direct-problem input where known
    ModelTag tag = ModelTag::regime_dependent;
};

/// Built-in fixtures by name:
///   quadratic-5.1 (R), squared-linear-5.2 (R), exponential-5.3 (R),
///   power-law-5.4 (b, R), sqrt-q-5.8 (c), quartic-5.9 (no parameters).
/// `params` overrides the defaults; unknown names or keys throw
/// std::invalid_argument, out-of-range values throw std::domain_error.
ModelFixture fixture(const std::string& name,
                     const std::map<std::string, double>& params = {});

std::vector<std::string> fixture_names();

const char* to_string(ModelTag tag);

/// Critical cutoff curve of the exponential profile: for r in (0, 2) the
/// returned R is where the wronskian changes sign; profiles with cutoff
/// at or above the curve (in particular R >= 2) keep a positive wronskian.
double exponential_boundary_radius(double r);

}  // namespace ssvp
