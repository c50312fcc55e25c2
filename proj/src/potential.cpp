#include "ssvp/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssvp/quadrature.hpp"

namespace ssvp {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

// ---- exponential-shift profile ------------------------------------------
//
// S2(r) = integral_0^r exp(-s) s^2 ds. The closed form 2 - e^-r (r^2+2r+2)
// cancels catastrophically for small r, so below 0.5 the alternating series
// sum_k (-1)^k r^(k+3) / (k! (k+3)) is used instead (terms fall below 1e-17
// of the sum well before 30 terms).
double exp_moment2(double r)
{
    if (r >= 0.5)
        return 2.0 - std::exp(-r) * (r * r + 2.0 * r + 2.0);
    double term = r * r * r; // k = 0 numerator r^3, divided below
    double sum = 0.0;
    double factorial = 1.0;
    for (int k = 0; k < 40; ++k) {
        if (k > 0) {
            factorial *= k;
            term *= r;
        }
        const double contrib = ((k % 2 == 0) ? 1.0 : -1.0) * term /
                               (factorial * (k + 3.0));
        sum += contrib;
        if (std::abs(contrib) < 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

double exp_value(double r, double R)
{
    if (r == 0.0)
        return kFourPi * (1.0 - std::exp(-R) * (1.0 + R + 0.5 * R * R));
    if (r >= R)
        return (kFourPi / r) * (exp_moment2(R) - std::exp(-R) * R * R * R / 3.0);
    // (2/r)(1 - e^-r) - e^-r - e^-R (1 + R + R^2/2 - r^2/6); expm1 keeps the
    // first group cancellation-free.
    return kFourPi * ((2.0 / r) * (-std::expm1(-r)) - std::exp(-r) -
                      std::exp(-R) * (1.0 + R + 0.5 * R * R - r * r / 6.0));
}

double exp_derivative(double r, double R)
{
    if (r == 0.0)
        return 0.0;
    if (r >= R) {
        const double m = exp_moment2(R) - std::exp(-R) * R * R * R / 3.0;
        return -(kFourPi / (r * r)) * m;
    }
    return kFourPi * (-exp_moment2(r) / (r * r) + std::exp(-R) * r / 3.0);
}

// ---- power-law profile ---------------------------------------------------

double pow_moment(double b, double R)
{
    // integral_0^R (s^-b - R^-b) s^2 ds
    return std::pow(R, 3.0 - b) * b / (3.0 * (3.0 - b));
}

double pow_value(double b, double r, double R)
{
    if (r >= R && r > 0.0)
        return (kFourPi / r) * pow_moment(b, R);
    if (b == 2.0) {
        if (r == 0.0)
            return std::numeric_limits<double>::infinity();
        return kFourPi * (0.5 + std::log(R / r) + r * r / (6.0 * R * R));
    }
    if (r == 0.0)
        return b >= 2.0 ? std::numeric_limits<double>::infinity()
                        : kFourPi * b * std::pow(R, 2.0 - b) / (2.0 * (2.0 - b));
    return kFourPi * (-std::pow(r, 2.0 - b) / ((3.0 - b) * (2.0 - b)) +
                      std::pow(R, -b) * r * r / 6.0 +
                      b * std::pow(R, 2.0 - b) / (2.0 * (2.0 - b)));
}

double pow_derivative(double b, double r, double R)
{
    if (r >= R)
        return -(kFourPi / (r * r)) * pow_moment(b, R);
    // -(4pi/r^2) integral_0^r (s^-b - R^-b) s^2 ds
    return -(kFourPi / (r * r)) *
           (std::pow(r, 3.0 - b) / (3.0 - b) - std::pow(R, -b) * r * r * r / 3.0);
}

// ---- polygon profile -----------------------------------------------------

// Potential contribution at radius r of a density that varies linearly from
// va at a to vb at b and vanishes elsewhere.
double linear_segment_value(double a, double b, double va, double vb, double r)
{
    const double beta = (vb - va) / (b - a);
    const double alpha = va - beta * a;
    const auto m1 = [&](double u, double v) {
        return alpha * (v * v - u * u) / 2.0 + beta * (v * v * v - u * u * u) / 3.0;
    };
    const auto m2 = [&](double u, double v) {
        return alpha * (v * v * v - u * u * u) / 3.0 +
               beta * (v * v * v * v - u * u * u * u) / 4.0;
    };
    if (r <= a)
        return kFourPi * m1(a, b);
    if (r >= b)
        return (kFourPi / r) * m2(a, b);
    return (kFourPi / r) * m2(a, r) + kFourPi * m1(r, b);
}

double linear_segment_moment2(double a, double b, double va, double vb, double hi)
{
    // integral over [a, min(b, hi)] of the linear density times s^2
    const double top = std::min(b, hi);
    if (top <= a)
        return 0.0;
    const double beta = (vb - va) / (b - a);
    const double alpha = va - beta * a;
    return alpha * (top * top * top - a * a * a) / 3.0 +
           beta * (top * top * top * top - a * a * a * a) / 4.0;
}

double polygon_value(const std::vector<double>& x, double R, double r)
{
    const std::size_t n = x.size();
    const double h = R / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double va = x[k];
        const double vb = (k + 1 < n) ? x[k + 1] : 0.0;
        sum += linear_segment_value(k * h, (k + 1) * h, va, vb, r);
    }
    return sum;
}

double polygon_derivative(const std::vector<double>& x, double R, double r)
{
    if (r == 0.0)
        return 0.0;
    const std::size_t n = x.size();
    const double h = R / static_cast<double>(n);
    double mass = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double va = x[k];
        const double vb = (k + 1 < n) ? x[k + 1] : 0.0;
        mass += linear_segment_moment2(k * h, (k + 1) * h, va, vb, r);
    }
    return -(kFourPi / (r * r)) * mass;
}

// ---- custom profile (adaptive quadrature of the defining integrals) ------

double custom_value(const RadialDensity& p, double r)
{
    const double R = p.cutoff();
    if (r == 0.0) {
        Quadrature q = integrate_adaptive([&](double s) { return p(s) * s; },
                                          0.0, R, 1e-12);
        return kFourPi * q.value;
    }
    const double split = std::min(r, R);
    Quadrature inner = integrate_adaptive(
        [&](double s) { return p(s) * s * s; }, 0.0, split, 1e-12);
    double tail = 0.0;
    if (r < R)
        tail = integrate_adaptive([&](double s) { return p(s) * s; }, r, R,
                                  1e-12)
                   .value;
    return kFourPi * (inner.value / r + tail);
}

double custom_derivative(const RadialDensity& p, double r)
{
    if (r == 0.0)
        return 0.0;
    const double split = std::min(r, p.cutoff());
    Quadrature inner = integrate_adaptive(
        [&](double s) { return p(s) * s * s; }, 0.0, split, 1e-12);
    return -(kFourPi / (r * r)) * inner.value;
}

} // namespace

double monomial_potential(int l, double R, double r)
{
    if (l < 0)
        throw std::invalid_argument("monomial potential: negative degree");
    if (!(R > 0.0) || r < 0.0)
        throw std::domain_error("monomial potential: bad radius");
    const double l2 = l + 2.0;
    const double l3 = l + 3.0;
    if (r <= R)
        return kFourPi *
               (-std::pow(r, l + 2.0) / (l2 * l3) + std::pow(R, l + 2.0) / l2);
    return kFourPi * std::pow(R, l + 3.0) / (l3 * r);
}

double potential_value(const RadialDensity& p, double r)
{
    if (r < 0.0)
        throw std::domain_error("potential: negative radius");
    const double R = p.cutoff();
    switch (p.kind()) {
    case RadialDensity::Kind::polynomial: {
        const auto& c = p.coefficients();
        double sum = 0.0;
        for (std::size_t l = 0; l < c.size(); ++l)
            if (c[l] != 0.0)
                sum += c[l] * monomial_potential(static_cast<int>(l), R, r);
        return sum;
    }
    case RadialDensity::Kind::exponential_shift:
        return exp_value(r, R);
    case RadialDensity::Kind::power_law:
        return pow_value(p.exponent(), r, R);
    case RadialDensity::Kind::polygon:
        return polygon_value(p.coefficients(), R, r);
    case RadialDensity::Kind::custom:
        return custom_value(p, r);
    }
    return 0.0;
}

double potential_derivative(const RadialDensity& p, double r)
{
    if (r < 0.0)
        throw std::domain_error("potential: negative radius");
    if (r == 0.0)
        return 0.0; // documented limit of -(4pi/r^2) * mass moment
    const double R = p.cutoff();
    switch (p.kind()) {
    case RadialDensity::Kind::polynomial: {
        const auto& c = p.coefficients();
        double sum = 0.0;
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (c[l] == 0.0)
                continue;
            const double l3 = l + 3.0;
            if (r <= R)
                sum += c[l] * (-kFourPi) * std::pow(r, l + 1.0) / l3;
            else
                sum += c[l] * (-kFourPi) * std::pow(R, l + 3.0) / (l3 * r * r);
        }
        return sum;
    }
    case RadialDensity::Kind::exponential_shift:
        return exp_derivative(r, R);
    case RadialDensity::Kind::power_law:
        return pow_derivative(p.exponent(), r, R);
    case RadialDensity::Kind::polygon:
        return polygon_derivative(p.coefficients(), R, r);
    case RadialDensity::Kind::custom:
        return custom_derivative(p, r);
    }
    return 0.0;
}

double potential_second_derivative(const RadialDensity& p, double r)
{
    if (r <= 0.0)
        throw std::domain_error("potential: second derivative needs r > 0");
    const double rho = (r < p.cutoff()) ? p(r) : 0.0;
    return -(2.0 / r) * potential_derivative(p, r) - kFourPi * rho;
}

PotentialProfile::PotentialProfile(RadialDensity density)
    : density_(std::move(density))
{
    E0_ = potential_value(density_, density_.cutoff());
    P0_ = potential_value(density_, 0.0);
}

double PotentialProfile::invert(double v) const
{
    const double R = density_.cutoff();
    const double slack =
        std::isinf(P0_) ? 1e-12 * std::abs(E0_) : 1e-12 * (P0_ - E0_) + 1e-300;
    if (v < E0_ - slack || (!std::isinf(P0_) && v > P0_ + slack))
        throw std::domain_error("potential inverse: value outside [P(R), P(0)]");
    if (v <= E0_)
        return R;
    if (!std::isinf(P0_) && v >= P0_)
        return 0.0;

    double lo = 0.0; // P(lo) >= v
    double hi = R;   // P(hi) <= v
    if (std::isinf(P0_)) {
        lo = R;
        do {
            lo *= 0.5;
            if (lo < 1e-300)
                throw std::domain_error("potential inverse: bracketing failed");
        } while ((*this)(lo) < v);
    }
    while (hi - lo > 1e-12 * R) {
        const double m = 0.5 * (lo + hi);
        if (m == lo || m == hi)
            break;
        if ((*this)(m) >= v)
            lo = m;
        else
            hi = m;
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
        const double dp = derivative(r);
        if (dp == 0.0 || !std::isfinite(dp))
            break;
        double step = ((*this)(r)-v) / dp;
        double cand = r - step;
        if (cand < lo || cand > hi)
            break; // keep the certified bracket
        r = cand;
    }
    return r;
}

} // namespace ssvp
