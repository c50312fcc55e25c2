#include "ssvp/models.hpp"

#include <cmath>
#include <stdexcept>

namespace ssvp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kFourPi = 4.0 * kPi;

/// Merge caller overrides into the fixture defaults, rejecting unknown keys.
std::map<std::string, double> merge_params(
    const std::string& name, const std::map<std::string, double>& defaults,
    const std::map<std::string, double>& overrides) {
    std::map<std::string, double> out = defaults;
    for (const auto& [key, val] : overrides) {
        auto it = out.find(key);
        if (it == out.end())
            throw std::invalid_argument("fixture " + name +
                                        ": unknown parameter '" + key + "'");
        it->second = val;
    }
    return out;
}

void require_positive(const std::string& name, const char* key, double v) {
    if (!(v > 0.0))
        throw std::domain_error("fixture " + name + ": parameter '" + key +
                                "' must be positive");
}

// Tail sum T(r) = sum_{j>=0} r^j / (j+5)!, the remainder factor in the
// cancellation-free wronskian of the exponential profile.
double exp_series_tail(double r) {
    double term = 1.0 / 120.0;  // j = 0 -> 1/5!
    double sum = term;
    for (int j = 1; j <= 80; ++j) {
        term *= r / static_cast<double>(j + 5);
        sum += term;
        if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
}

ModelFixture make_quadratic(const std::map<std::string, double>& params) {
    const std::string name = "quadratic-5.1";
    auto p = merge_params(name, {{"R", 8.0}}, params);
    const double R = p.at("R");
    require_positive(name, "R", R);
    const double a = 5.0 / (kPi * R * R);
    p["a"] = a;

    ModelFixture fx;
    fx.name = name;
    fx.parameters = p;
    fx.density = RadialDensity::polynomial({1.0, 0.0, -1.0 / (R * R)}, R);
    fx.tag = ModelTag::extendable;

    ClosedForms& c = fx.closed;
    c.cutoff_energy = 8.0 * kPi * R * R / 15.0;
    c.central_potential = kPi * R * R;
    c.potential = [R](double r) {
        return kFourPi * (R * R / 4.0 - r * r / 6.0 +
                          r * r * r * r / (20.0 * R * R));
    };
    c.potential_derivative = [R](double r) {
        return kFourPi * (-r / 3.0 + r * r * r / (5.0 * R * R));
    };
    c.potential_inverse = [R](double v) {
        const double inner = 5.0 * v / (kPi * R * R) - 20.0 / 9.0;
        return R * std::sqrt(5.0 / 3.0 - std::sqrt(inner));
    };
    c.wronskian = [R](double r) {
        return -16.0 * kPi * r * r * r / (5.0 * R * R * R * R);
    };
    c.slice = [a](double h) { return std::sqrt(a * h + 4.0 / 9.0) - 2.0 / 3.0; };
    c.slice_second = [a](double h) {
        return -(a * a / 4.0) * std::pow(a * h + 4.0 / 9.0, -1.5);
    };
    c.distribution = [a](double h) {
        const double rate = (1.0 / 3.0) / ((h + 4.0 / (9.0 * a)) * std::sqrt(h));
        return std::sqrt(2.0) / (4.0 * kPi * kPi) * rate;
    };

    EnergyMap map;
    map.domain_upper = 1.0;
    map.value = [R](double t) {
        return kPi * R * R / 5.0 * (t * t + 4.0 * t / 3.0);
    };
    map.derivative = [R](double t) {
        return kPi * R * R / 5.0 * (2.0 * t + 4.0 / 3.0);
    };
    map.second_derivative = [R](double) { return 2.0 * kPi * R * R / 5.0; };
    map.inverse_value = c.slice;
    map.provenance = MapProvenance::closed_form;
    fx.map = std::move(map);
    return fx;
}

ModelFixture make_squared_linear(const std::map<std::string, double>& params) {
    const std::string name = "squared-linear-5.2";
    auto p = merge_params(name, {{"R", 2.0}}, params);
    const double R = p.at("R");
    require_positive(name, "R", R);

    ModelFixture fx;
    fx.name = name;
    fx.parameters = p;
    fx.density =
        RadialDensity::polynomial({1.0, -2.0 / R, 1.0 / (R * R)}, R);
    fx.tag = ModelTag::extendable;

    ClosedForms& c = fx.closed;
    c.cutoff_energy = 2.0 * kPi * R * R / 15.0;
    c.central_potential = kPi * R * R / 3.0;
    c.potential = [R](double r) {
        return kFourPi * (-r * r / 6.0 + r * r * r / (6.0 * R) -
                          r * r * r * r / (20.0 * R * R) + R * R / 12.0);
    };
    c.potential_derivative = [R](double r) {
        return kFourPi *
               (-r / 3.0 + r * r / (2.0 * R) - r * r * r / (5.0 * R * R));
    };
    // Scaled profile (4 pi / R) f(r/R); f stays positive on [0, 1] with its
    // interior minimum f(5/6) = 7/108.
    c.wronskian = [R](double r) {
        const double al = r / R;
        const double f =
            2.0 / 3.0 - 2.0 * al + 2.2 * al * al - 0.8 * al * al * al;
        return kFourPi / R * f;
    };
    return fx;
}

ModelFixture make_exponential(const std::map<std::string, double>& params) {
    const std::string name = "exponential-5.3";
    auto p = merge_params(name, {{"R", 2.0}}, params);
    const double R = p.at("R");
    require_positive(name, "R", R);

    ModelFixture fx;
    fx.name = name;
    fx.parameters = p;
    fx.density = RadialDensity::exponential_shift(R);
    fx.tag = R >= 2.0 ? ModelTag::extendable : ModelTag::regime_dependent;

    const double eR = std::exp(-R);
    ClosedForms& c = fx.closed;
    c.central_potential = kFourPi * (1.0 - eR * (1.0 + R + R * R / 2.0));
    c.potential = [R, eR](double r) {
        const double core = r > 0.0
                                ? -2.0 * std::expm1(-r) / r - std::exp(-r)
                                : 1.0;
        return kFourPi *
               (core - eR * (1.0 + R + R * R / 2.0 - r * r / 6.0));
    };
    c.cutoff_energy = c.potential(R);
    c.potential_derivative = [eR](double r) {
        if (r == 0.0) return 0.0;
        const double er = std::exp(-r);
        const double core =
            er + (2.0 / (r * r)) * (r * er + std::expm1(-r));
        return kFourPi * (core + eR * r / 3.0);
    };
    c.wronskian = [R](double r) {
        const double head = -(std::exp(r - R) / 3.0) * (1.0 + r) + 1.0 / 3.0 +
                            r / 6.0 + r * r / 12.0;
        const double tail = (2.0 * r - 4.0) * r * r * exp_series_tail(r);
        return kFourPi * std::exp(-2.0 * r) * (head + tail);
    };
    return fx;
}

ModelFixture make_power_law(const std::map<std::string, double>& params) {
    const std::string name = "power-law-5.4";
    auto p = merge_params(name, {{"b", 0.5}, {"R", 1.0}}, params);
    const double b = p.at("b");
    const double R = p.at("R");
    require_positive(name, "R", R);
    if (!(b > 0.0) || !(b < 3.0))
        throw std::domain_error(
            "fixture " + name + ": exponent b must lie in (0, 3)");
    if (b < 1.0)
        p["r0"] = R * std::pow(6.0 / (6.0 + b - b * b), 1.0 / b);

    ModelFixture fx;
    fx.name = name;
    fx.parameters = p;
    fx.density = RadialDensity::power_law(b, R);
    fx.tag = b >= 1.0 ? ModelTag::extendable : ModelTag::regime_dependent;

    const double Rb = std::pow(R, -b);
    ClosedForms& c = fx.closed;
    if (b == 2.0) {
        c.potential = [R](double r) {
            return kFourPi *
                   (0.5 + std::log(R / r) + r * r / (6.0 * R * R));
        };
        c.cutoff_energy = kFourPi * (0.5 + 1.0 / 6.0);
        c.central_potential = std::numeric_limits<double>::infinity();
    } else {
        const double head = b * std::pow(R, 2.0 - b) / (2.0 * (2.0 - b));
        c.potential = [b, Rb, head](double r) {
            return kFourPi * (-std::pow(r, 2.0 - b) / ((3.0 - b) * (2.0 - b)) +
                              Rb * r * r / 6.0 + head);
        };
        c.cutoff_energy = c.potential(R);
        c.central_potential = b < 2.0
                                  ? kFourPi * head
                                  : std::numeric_limits<double>::infinity();
    }
    c.potential_derivative = [b, Rb](double r) {
        return kFourPi * (-std::pow(r, 1.0 - b) / (3.0 - b) + Rb * r / 3.0);
    };
    c.wronskian = [b, R, Rb](double r) {
        const double factor =
            kFourPi * b * Rb * std::pow(r, -b - 1.0) / (3.0 - b);
        return factor * (2.0 * (std::pow(R / r, b) - 1.0) +
                         (b * b - b) / 3.0);
    };
    return fx;
}

ModelFixture make_sqrt_q(const std::map<std::string, double>& params) {
    const std::string name = "sqrt-q-5.8";
    const double c_default =
        std::sqrt(2.0) / (16.0 * kPi * kPi * kPi * kPi * 1000.0);
    auto p = merge_params(name, {{"c", c_default}}, params);
    const double cc = p.at("c");
    require_positive(name, "c", cc);

    ModelFixture fx;
    fx.name = name;
    fx.parameters = p;
    fx.tag = ModelTag::extendable;

    ClosedForms& cf = fx.closed;
    cf.distribution = [cc](double h) { return cc * std::sqrt(h); };
    cf.slice = [cc](double h) {
        return kPi * kPi * cc / std::sqrt(2.0) * h * h;
    };

    const double g = std::pow(2.0, 0.25) / (kPi * std::sqrt(cc));
    EnergyMap map;
    map.value = [g](double t) { return g * std::sqrt(t); };
    map.derivative = [g](double t) { return 0.5 * g / std::sqrt(t); };
    map.second_derivative = [g](double t) {
        return -0.25 * g * std::pow(t, -1.5);
    };
    map.inverse_value = [g](double h) { return h * h / (g * g); };
    map.provenance = MapProvenance::closed_form;
    fx.map = std::move(map);
    return fx;
}

ModelFixture make_quartic(const std::map<std::string, double>& params) {
    const std::string name = "quartic-5.9";
    if (!params.empty())
        throw std::invalid_argument(
            "fixture " + name + ": takes no parameter overrides");
    const double R = 2.0;
    const std::vector<double> coeffs = {2.0, 0.0, -39.0 / 146.0,
                                        -107.0 / 146.0, 45.0 / 146.0};

    ModelFixture fx;
    fx.name = name;
    fx.parameters = {{"R", R},
                     {"w", 1.3},
                     {"a0", coeffs[0]},
                     {"a1", coeffs[1]},
                     {"a2", coeffs[2]},
                     {"a3", coeffs[3]},
                     {"a4", coeffs[4]}};
    fx.density = RadialDensity::polynomial(coeffs, R);
    fx.tag = ModelTag::not_extendable;

    ClosedForms& c = fx.closed;
    c.cutoff_energy = kFourPi * 5528.0 / 7665.0;
    c.central_potential = kFourPi * 558.0 / 365.0;
    c.potential = [](double r) {
        const double r2 = r * r;
        return kFourPi * (558.0 / 365.0 - r2 / 3.0 +
                          39.0 / 2920.0 * r2 * r2 +
                          107.0 / 4380.0 * r2 * r2 * r -
                          15.0 / 2044.0 * r2 * r2 * r2);
    };
    c.potential_derivative = [](double r) {
        const double r2 = r * r;
        return kFourPi * (-2.0 * r / 3.0 + 39.0 / 730.0 * r2 * r +
                          107.0 / 876.0 * r2 * r2 -
                          45.0 / 1022.0 * r2 * r2 * r);
    };
    c.wronskian = [pd = c.potential_derivative](double r) {
        const double r2 = r * r;
        const double dp = (-78.0 * r - 321.0 * r2 + 180.0 * r2 * r) / 146.0;
        const double d2p = (-78.0 - 642.0 * r + 540.0 * r2) / 146.0;
        const double d2P =
            kFourPi * (-2.0 / 3.0 + 117.0 / 730.0 * r2 +
                       107.0 / 219.0 * r2 * r - 225.0 / 1022.0 * r2 * r2);
        return dp * d2P - d2p * pd(r);
    };
    return fx;
}

}  // namespace

ModelFixture fixture(const std::string& name,
                     const std::map<std::string, double>& params) {
    if (name == "quadratic-5.1") return make_quadratic(params);
    if (name == "squared-linear-5.2") return make_squared_linear(params);
    if (name == "exponential-5.3") return make_exponential(params);
    if (name == "power-law-5.4") return make_power_law(params);
    if (name == "sqrt-q-5.8") return make_sqrt_q(params);
    if (name == "quartic-5.9") return make_quartic(params);
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
    return {"quadratic-5.1",  "squared-linear-5.2", "exponential-5.3",
            "power-law-5.4",  "sqrt-q-5.8",         "quartic-5.9"};
}

const char* to_string(ModelTag tag) {
    switch (tag) {
        case ModelTag::extendable: return "extendable";
        case ModelTag::not_extendable: return "not-extendable";
        case ModelTag::regime_dependent: return "regime-dependent";
    }
    return "unknown";
}

double exponential_boundary_radius(double r) {
    if (!(r > 0.0) || !(r < 2.0 + 1e-12))
        throw std::domain_error(
            "boundary curve is defined for radii in (0, 2]");
    const double num = 6.0 * ((r + 2.0) * std::exp(-r) + r - 2.0);
    const double den = (r + 1.0) * r * r * r;
    const double arg = num / den;
    if (!(arg > 0.0))
        throw std::domain_error("boundary curve argument out of range");
    return -std::log(arg);
}

}  // namespace ssvp
