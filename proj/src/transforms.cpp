#include "ssvp/transforms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssvp/quadrature.hpp"

namespace ssvp {

namespace {

// integral_0^x phi(s)/sqrt(x-s) ds; tolerates an integrable singularity of
// phi at s = 0 as well. Each half is transformed explicitly — s = t^2 on the
// left, s = x - t^2 on the right — so the kernel zero cancels analytically
// instead of by floating-point subtraction.
double half_integral(const std::function<double(double)>& phi, double x)
{
    if (x <= 0.0)
        return 0.0;
    const double m = 0.5 * x;
    auto left = [&](double t) { return 2.0 * t * phi(t * t) / std::sqrt(x - t * t); };
    auto right = [&](double t) { return 2.0 * phi(x - t * t); };
    return integrate_refining(left, 0.0, std::sqrt(m), 1e-12).value +
           integrate_refining(right, 0.0, std::sqrt(x - m), 1e-12).value;
}

// integral_0^x phi(s) sqrt(x-s) ds with the same endpoint treatment.
double half_primitive(const std::function<double(double)>& phi, double x)
{
    if (x <= 0.0)
        return 0.0;
    const double m = 0.5 * x;
    auto left = [&](double t) { return 2.0 * t * phi(t * t) * std::sqrt(x - t * t); };
    auto right = [&](double t) { return 2.0 * t * t * phi(x - t * t); };
    return integrate_refining(left, 0.0, std::sqrt(m), 1e-12).value +
           integrate_refining(right, 0.0, std::sqrt(x - m), 1e-12).value;
}

} // namespace

double abel_forward(const HalfLineFunction& f, double x)
{
    if (x < 0.0)
        throw std::domain_error("abel_forward: negative abscissa");
    return half_integral(f.value, x);
}

double abel_forward_midpoint(const HalfLineFunction& f, double x, int panels)
{
    if (x <= 0.0)
        return 0.0;
    if (panels < 1)
        throw std::invalid_argument("abel_forward_midpoint: panels < 1");
    const double dx = x / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double s = (i + 0.5) * dx;
        sum += f.value(s) / std::sqrt(x - s);
    }
    return sum * dx;
}

double abel_invert(const HalfLineFunction& g, double x)
{
    if (x < 0.0)
        throw std::domain_error("abel_invert: negative abscissa");
    const double cap = g.upper > 0.0 ? g.upper : 1.0;

    // Compatibility probe: the half-integral G of an admissible right-hand
    // side vanishes at 0; a 1/sqrt(s)-type candidate leaves it pinned at a
    // positive constant instead.
    const double probe = half_integral(g.value, 1e-8 * cap);
    if (std::abs(probe) > 1e-6)
        throw std::domain_error(
            "abel_invert: half-integral of g does not vanish at 0; "
            "g is not in the operator's range");

    if (g.derivative) {
        const double g0 = g.value(0.0);
        if (!std::isfinite(g0))
            throw std::domain_error("abel_invert: g(0) not finite");
        if (x == 0.0) {
            if (g0 == 0.0)
                return 0.0;
            return std::copysign(std::numeric_limits<double>::infinity(), g0);
        }
        const double tail = half_integral(g.derivative, x);
        return (g0 / std::sqrt(x) + tail) / M_PI;
    }

    // No derivative supplied: difference the half-integral directly.
    const double step = 1e-5 * cap;
    const double lo = std::max(x - step, 0.0);
    const double hi = x + step;
    return (half_integral(g.value, hi) - half_integral(g.value, lo)) /
           ((hi - lo) * M_PI);
}

double eddington_forward(const HalfLineFunction& q, double h,
                         bool physical_prefactor)
{
    if (h < 0.0)
        throw std::domain_error("eddington_forward: negative abscissa");
    const double raw = half_primitive(q.value, h);
    return physical_prefactor ? 4.0 * M_PI * std::sqrt(2.0) * raw : raw;
}

double eddington_invert(const HalfLineFunction& g, double h)
{
    if (h < 0.0)
        throw std::domain_error("eddington_invert: negative abscissa");
    if (!g.derivative)
        throw std::invalid_argument("eddington_invert: needs g'");

    if (g.second_derivative) {
        const double d0 = g.derivative(0.0);
        if (h == 0.0)
            return d0 > 0.0 ? std::numeric_limits<double>::infinity()
                            : 0.0; // integrable singularity marker
        const double tail = half_integral(g.second_derivative, h);
        return (d0 / std::sqrt(h) + tail) * 2.0 / M_PI;
    }

    // Difference H(h) = integral_0^h g'(s)/sqrt(h-s) ds.
    const double cap = g.upper > 0.0 ? g.upper : 1.0;
    if (h == 0.0)
        return g.derivative(0.0) > 0.0
                   ? std::numeric_limits<double>::infinity()
                   : 0.0;
    const double step = 1e-5 * cap;
    const double lo = std::max(h - step, 0.0);
    const double hi = h + step;
    const double dH =
        half_integral(g.derivative, hi) - half_integral(g.derivative, lo);
    return dH / (hi - lo) * 2.0 / M_PI;
}

} // namespace ssvp
