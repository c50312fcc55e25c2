#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ssvp {

/// Spherically symmetric density with compact support [0, R].
///
/// The value is finite and positive on (0, R) and zero beyond R; a blow-up
/// at r = 0 (power-law profiles) is allowed. Derivative access is analytic
/// for the built-in representations and finite-difference backed for custom
/// evaluators that do not supply their own derivatives.
class RadialDensity {
public:
    enum class Kind { polynomial, exponential_shift, power_law, polygon, custom };

    /// p(r) = sum_l coeff[l] r^l on [0, R].
    static RadialDensity polynomial(std::vector<double> coeffs, double R);

    /// p(r) = exp(-r) - exp(-R) on [0, R].
    static RadialDensity exponential_shift(double R);

    /// p(r) = r^-b - R^-b on (0, R], 0 < b < 3.
    static RadialDensity power_law(double b, double R);

    /// Piecewise-linear density with nodes k R/n and values[k] there;
    /// values.size() == n, the implicit node value at R is zero.
    static RadialDensity polygon(std::vector<double> values, double R);

    /// Arbitrary evaluator; derivatives optional (finite differences else).
    static RadialDensity custom(std::function<double(double)> p, double R,
                                std::function<double(double)> dp = nullptr,
                                std::function<double(double)> d2p = nullptr);

    double cutoff() const { return R_; }
    Kind kind() const { return kind_; }
    bool has_analytic_derivatives() const { return analytic_; }

    double operator()(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;

    /// Polynomial coefficients or polygon node values (by kind).
    const std::vector<double>& coefficients() const { return payload_; }
    /// Power-law exponent b.
    double exponent() const { return exponent_; }

private:
    RadialDensity() = default;

    Kind kind_ = Kind::custom;
    double R_ = 1.0;
    double exponent_ = 0.0;
    bool analytic_ = false;
    std::vector<double> payload_;
    std::function<double(double)> fn_, dfn_, d2fn_;
};

} // namespace ssvp
