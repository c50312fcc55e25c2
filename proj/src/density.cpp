#include "ssvp/density.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssvp {

namespace {

double horner(const std::vector<double>& c, double r)
{
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * r + *it;
    return v;
}

std::vector<double> derive(const std::vector<double>& c)
{
    std::vector<double> d;
    for (std::size_t l = 1; l < c.size(); ++l)
        d.push_back(static_cast<double>(l) * c[l]);
    return d;
}

} // namespace

RadialDensity RadialDensity::polynomial(std::vector<double> coeffs, double R)
{
    if (!(R > 0.0))
        throw std::invalid_argument("polynomial density: cutoff must be positive");
    if (coeffs.empty())
        throw std::invalid_argument("polynomial density: empty coefficient list");
    RadialDensity p;
    p.kind_ = Kind::polynomial;
    p.R_ = R;
    p.analytic_ = true;
    p.payload_ = std::move(coeffs);
    return p;
}

RadialDensity RadialDensity::exponential_shift(double R)
{
    if (!(R > 0.0))
        throw std::invalid_argument("exponential density: cutoff must be positive");
    RadialDensity p;
    p.kind_ = Kind::exponential_shift;
    p.R_ = R;
    p.analytic_ = true;
    return p;
}

RadialDensity RadialDensity::power_law(double b, double R)
{
    if (!(R > 0.0))
        throw std::invalid_argument("power-law density: cutoff must be positive");
    if (!(b > 0.0) || !(b < 3.0))
        throw std::invalid_argument("power-law density: exponent must lie in (0, 3)");
    RadialDensity p;
    p.kind_ = Kind::power_law;
    p.R_ = R;
    p.exponent_ = b;
    p.analytic_ = true;
    return p;
}

RadialDensity RadialDensity::polygon(std::vector<double> values, double R)
{
    if (!(R > 0.0))
        throw std::invalid_argument("polygon density: cutoff must be positive");
    if (values.empty())
        throw std::invalid_argument("polygon density: empty value list");
    RadialDensity p;
    p.kind_ = Kind::polygon;
    p.R_ = R;
    p.analytic_ = false;
    p.payload_ = std::move(values);
    return p;
}

RadialDensity RadialDensity::custom(std::function<double(double)> fn, double R,
                                    std::function<double(double)> dfn,
                                    std::function<double(double)> d2fn)
{
    if (!(R > 0.0))
        throw std::invalid_argument("custom density: cutoff must be positive");
    if (!fn)
        throw std::invalid_argument("custom density: evaluator required");
    RadialDensity p;
    p.kind_ = Kind::custom;
    p.R_ = R;
    p.analytic_ = static_cast<bool>(dfn) && static_cast<bool>(d2fn);
    p.fn_ = std::move(fn);
    p.dfn_ = std::move(dfn);
    p.d2fn_ = std::move(d2fn);
    return p;
}

double RadialDensity::operator()(double r) const
{
    if (r < 0.0)
        throw std::domain_error("density: negative radius");
    if (r >= R_ && kind_ != Kind::custom)
        return 0.0;
    switch (kind_) {
    case Kind::polynomial:
        return horner(payload_, r);
    case Kind::exponential_shift:
        return std::exp(-r) - std::exp(-R_);
    case Kind::power_law:
        if (r == 0.0)
            return std::numeric_limits<double>::infinity();
        return std::pow(r, -exponent_) - std::pow(R_, -exponent_);
    case Kind::polygon: {
        const std::size_t n = payload_.size();
        const double h = R_ / static_cast<double>(n);
        const std::size_t k = std::min<std::size_t>(
            static_cast<std::size_t>(r / h), n - 1);
        const double left = payload_[k];
        const double right = (k + 1 < n) ? payload_[k + 1] : 0.0;
        const double t = (r - k * h) / h;
        return left + (right - left) * t;
    }
    case Kind::custom:
        return r >= R_ ? 0.0 : fn_(r);
    }
    return 0.0;
}

double RadialDensity::derivative(double r) const
{
    if (r < 0.0)
        throw std::domain_error("density: negative radius");
    if (r > R_)
        return 0.0;
    switch (kind_) {
    case Kind::polynomial:
        return horner(derive(payload_), r);
    case Kind::exponential_shift:
        return -std::exp(-r);
    case Kind::power_law:
        if (r == 0.0)
            throw std::domain_error("power-law density: derivative at r = 0");
        return -exponent_ * std::pow(r, -exponent_ - 1.0);
    case Kind::polygon: {
        const std::size_t n = payload_.size();
        const double h = R_ / static_cast<double>(n);
        const std::size_t k = std::min<std::size_t>(
            static_cast<std::size_t>(r / h), n - 1);
        const double left = payload_[k];
        const double right = (k + 1 < n) ? payload_[k + 1] : 0.0;
        return (right - left) / h;
    }
    case Kind::custom:
        if (dfn_)
            return dfn_(r);
        break;
    }
    // Central difference; step balances truncation against rounding.
    const double eps = std::max(1e-5 * R_, 6e-6 * std::max(r, 1e-3 * R_));
    const double lo = std::max(0.0, r - eps);
    const double hi = r + eps;
    return ((*this)(hi) - (*this)(lo)) / (hi - lo);
}

double RadialDensity::second_derivative(double r) const
{
    if (r < 0.0)
        throw std::domain_error("density: negative radius");
    if (r > R_)
        return 0.0;
    switch (kind_) {
    case Kind::polynomial:
        return horner(derive(derive(payload_)), r);
    case Kind::exponential_shift:
        return std::exp(-r);
    case Kind::power_law:
        if (r == 0.0)
            throw std::domain_error("power-law density: derivative at r = 0");
        return exponent_ * (exponent_ + 1.0) * std::pow(r, -exponent_ - 2.0);
    case Kind::polygon:
        return 0.0;
    case Kind::custom:
        if (d2fn_)
            return d2fn_(r);
        break;
    }
    const double eps = std::max(1e-4 * R_, 1e-4 * std::max(r, 1e-3 * R_));
    const double lo = std::max(0.0, r - eps);
    const double hi = r + eps;
    const double mid = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    return ((*this)(hi) - 2.0 * (*this)(mid) + (*this)(lo)) / (h * h);
}

} // namespace ssvp
