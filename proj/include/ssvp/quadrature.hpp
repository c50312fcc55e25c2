#pragma once

#include <functional>

namespace ssvp {

/// Result of a numerical integration together with an error estimate.
/// The estimate is the change produced by the last refinement step and is
/// therefore a practical (not guaranteed) bound; callers that certify signs
/// compare it against the magnitude of the value.
struct Quadrature {
    double value = 0.0;
    double error = 0.0;   ///< estimated absolute error
    int panels = 0;       ///< panels used on the final pass
};

using Integrand = std::function<double(double)>;

/// Fixed 64-point Gauss-Legendre rule over [a, b].
double gauss_panel(const Integrand& f, double a, double b);

/// Composite 64-point Gauss-Legendre with panel doubling until the result
/// changes by less than rel_tol relatively (or max_doublings is reached).
Quadrature integrate_refining(const Integrand& f, double a, double b,
                              double rel_tol = 1e-12, int max_doublings = 14);

/// Integral of f over [a, b] where f may carry an integrable inverse-sqrt
/// singularity at either endpoint (or a sqrt kink). The interval is split at
/// the midpoint and each half is mapped by s = a + t^2 resp. s = b - t^2,
/// which removes both singularities before the panel-doubling rule is used.
Quadrature integrate_sqrt_endpoints(const Integrand& f, double a, double b,
                                    double rel_tol = 1e-12,
                                    int max_doublings = 14);

/// Adaptive Gauss-Kronrod integration (general-purpose oracle path).
Quadrature integrate_adaptive(const Integrand& f, double a, double b,
                              double tol = 1e-12);

/// Bisection for a root of f in [lo, hi]; requires f(lo)*f(hi) <= 0.
/// Stops when the bracket width drops below tol.
double bisect(const Integrand& f, double lo, double hi, double tol);

} // namespace ssvp
