#pragma once

#include <functional>

namespace ssvp {

/// A function on [0, T) — possibly singular at the left endpoint — together
/// with whatever derivative data the caller can supply analytically.
struct HalfLineFunction {
    double upper = 0.0;                               ///< domain cap T
    std::function<double(double)> value;              ///< finite on (0, T)
    std::function<double(double)> derivative;         ///< optional
    std::function<double(double)> second_derivative;  ///< optional
    bool locally_integrable = true;
};

/// integral_0^x f(s)/sqrt(x-s) ds, the half-order fractional integral.
double abel_forward(const HalfLineFunction& f, double x);

/// Same integral by a plain midpoint rule; kept as a cross-check for the
/// substitution-based path.
double abel_forward_midpoint(const HalfLineFunction& f, double x, int panels);

/// Solves g(x) = integral_0^x f(s)/sqrt(x-s) ds for f at x.
///
/// Throws std::domain_error when the compatibility probe fails: the
/// half-integral of g must vanish at 0 (candidates like 1/sqrt(s) integrate
/// to a constant pi and are not representable).
double abel_invert(const HalfLineFunction& g, double x);

/// integral_0^h q(s) sqrt(h-s) ds; the physical normalisation multiplies by
/// 4*pi*sqrt(2).
double eddington_forward(const HalfLineFunction& q, double h,
                         bool physical_prefactor = true);

/// Solves g(x) = integral_0^x f(s) sqrt(x-s) ds for f at h. Requires g'.
///
/// h = 0 with g'(0) > 0 returns +infinity: the solution has an integrable
/// 1/sqrt(h) singularity there, which is a feature of the problem class,
/// not a failure.
double eddington_invert(const HalfLineFunction& g, double h);

} // namespace ssvp
