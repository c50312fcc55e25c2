#include "ssvp/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ssvp {

namespace {

constexpr int kOrder = 64;

struct GaussRule {
    std::array<double, kOrder> node;    // on [-1, 1]
    std::array<double, kOrder> weight;
};

// Nodes are the roots of the Legendre polynomial, found by Newton iteration
// on the three-term recurrence; accurate to machine precision.
GaussRule make_rule()
{
    GaussRule rule{};
    const int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.node[i] = -x;
        rule.weight[i] = w;
        rule.node[n - 1 - i] = x;
        rule.weight[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& rule()
{
    static const GaussRule r = make_rule();
    return r;
}

} // namespace

double gauss_panel(const Integrand& f, double a, double b)
{
    const GaussRule& r = rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kOrder; ++i)
        sum += r.weight[i] * f(mid + half * r.node[i]);
    return half * sum;
}

Quadrature integrate_refining(const Integrand& f, double a, double b,
                              double rel_tol, int max_doublings)
{
    if (!(b > a))
        return {0.0, 0.0, 0};

    int panels = 1;
    double prev = gauss_panel(f, a, b);
    Quadrature q{prev, std::abs(prev), panels};
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        const double h = (b - a) / panels;
        double sum = 0.0;
        for (int j = 0; j < panels; ++j)
            sum += gauss_panel(f, a + j * h, a + (j + 1) * h);
        const double err = std::abs(sum - prev);
        q = {sum, err, panels};
        if (err <= rel_tol * std::max(std::abs(sum), 1e-300))
            return q;
        prev = sum;
    }
    return q;
}

Quadrature integrate_sqrt_endpoints(const Integrand& f, double a, double b,
                                    double rel_tol, int max_doublings)
{
    if (!(b > a))
        return {0.0, 0.0, 0};

    const double mid = 0.5 * (a + b);
    const auto left = [&](double t) { return 2.0 * t * f(a + t * t); };
    const auto right = [&](double t) { return 2.0 * t * f(b - t * t); };
    Quadrature ql = integrate_refining(left, 0.0, std::sqrt(mid - a),
                                       rel_tol, max_doublings);
    Quadrature qr = integrate_refining(right, 0.0, std::sqrt(b - mid),
                                       rel_tol, max_doublings);
    return {ql.value + qr.value, ql.error + qr.error,
            std::max(ql.panels, qr.panels)};
}

Quadrature integrate_adaptive(const Integrand& f, double a, double b,
                              double tol)
{
    if (!(b > a))
        return {0.0, 0.0, 0};
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, tol, &err);
    return {v, err, 0};
}

double bisect(const Integrand& f, double lo, double hi, double tol)
{
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument("bisect: endpoints do not bracket a root");
    while (hi - lo > tol) {
        const double m = 0.5 * (lo + hi);
        if (m == lo || m == hi)
            break;
        const double fm = f(m);
        if (fm == 0.0)
            return m;
        if (flo * fm < 0.0) {
            hi = m;
            fhi = fm;
        } else {
            lo = m;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace ssvp
