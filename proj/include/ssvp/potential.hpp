#pragma once

#include "ssvp/density.hpp"

namespace ssvp {

/// Induced potential of a single monomial density r^l truncated at R,
/// 4pi [ -r^(l+2)/((l+2)(l+3)) + R^(l+2)/(l+2) ] inside and the matching
/// exterior branch 4pi R^(l+3)/((l+3) r) outside.
double monomial_potential(int l, double R, double r);

/// Value of the induced potential of p at radius r >= 0.
double potential_value(const RadialDensity& p, double r);

/// Radial derivative of the induced potential; zero at r = 0.
double potential_derivative(const RadialDensity& p, double r);

/// Second radial derivative via the radial Poisson identity
/// P'' = -(2/r) P' - 4 pi p; r = 0 is outside the domain.
double potential_second_derivative(const RadialDensity& p, double r);

/// Monotone radial potential profile of a cutoff density, with cached
/// boundary values and a numeric inverse. The profile is strictly
/// decreasing on (0, R], so the inverse is well defined on [E0, P(0)).
class PotentialProfile {
public:
    explicit PotentialProfile(RadialDensity density);

    double operator()(double r) const { return potential_value(density_, r); }
    double derivative(double r) const { return potential_derivative(density_, r); }
    double second_derivative(double r) const
    {
        return potential_second_derivative(density_, r);
    }

    double cutoff() const { return density_.cutoff(); }
    double cutoff_potential() const { return E0_; }     ///< P(R)
    double central_potential() const { return P0_; }    ///< P(0), may be +inf

    /// Radius r in [0, R] with P(r) = v. Bisection to 1e-12 R followed by
    /// two Newton polish steps. Values outside [E0, P(0)] (beyond a small
    /// rounding slack) raise a domain error.
    double invert(double v) const;

    const RadialDensity& density() const { return density_; }

private:
    RadialDensity density_;
    double E0_ = 0.0;
    double P0_ = 0.0;
};

} // namespace ssvp
