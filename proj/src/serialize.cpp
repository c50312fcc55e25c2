#include "ssvp/serialize.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "ssvp/models.hpp"

namespace ssvp {

namespace {

using nlohmann::json;

/// Non-finite doubles have no JSON number form; map them to null.
json num(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

json kantorovich_json(const KantorovichReport& k) {
    return json{{"status", to_string(k.status)},
                {"beta", num(k.beta)},
                {"eta", num(k.eta)},
                {"curvature_bound", num(k.curvature_bound)},
                {"indicator", num(k.indicator)}};
}

json solve_json(const SolveReport& rep) {
    json j{{"n", rep.n},
           {"converged", rep.converged},
           {"iterations", rep.iterations},
           {"cutoff_energy", num(rep.cutoff_energy)},
           {"residual_norm", num(rep.residual_norm)},
           {"clamped", rep.clamped},
           {"kantorovich", kantorovich_json(rep.kantorovich)},
           {"l2_error", num(rep.l2_error)}};
    if (!rep.failure.empty()) j["failure"] = rep.failure;
    std::vector<double> x(rep.solution.data(),
                          rep.solution.data() + rep.solution.size());
    j["solution"] = x;
    return j;
}

}  // namespace

std::string report_json(const ExtendabilityReport& rep) {
    json j{{"verdict", to_string(rep.verdict)},
           {"evidence", to_string(rep.evidence)},
           {"cutoff_energy", num(rep.cutoff_energy)},
           {"central_potential", num(rep.central_potential)},
           {"min_distribution", num(rep.min_distribution)},
           {"min_location", num(rep.min_location)}};
    json ws = json::array();
    for (const auto& [r, v] : rep.wronskian_samples)
        ws.push_back(json::array({r, v}));
    j["wronskian_samples"] = std::move(ws);
    json rs = json::array();
    for (const RateSample& s : rep.rate_samples)
        rs.push_back(json{{"h", s.h}, {"value", num(s.value)},
                          {"error", num(s.error)}});
    j["rate_samples"] = std::move(rs);
    return j.dump(2) + "\n";
}

std::string ladder_json(const std::vector<SolveReport>& ladder) {
    json levels = json::array();
    for (const SolveReport& rep : ladder) levels.push_back(solve_json(rep));
    return json{{"levels", std::move(levels)}}.dump(2) + "\n";
}

std::string models_json() {
    json list = json::array();
    for (const std::string& name : fixture_names()) {
        ModelFixture fx = fixture(name);
        json params = json::object();
        for (const auto& [k, v] : fx.parameters) params[k] = v;
        list.push_back(json{{"name", name},
                            {"tag", to_string(fx.tag)},
                            {"parameters", std::move(params)},
                            {"has_density", fx.density.has_value()},
                            {"has_map", fx.map.has_value()},
                            {"has_closed_potential",
                             static_cast<bool>(fx.closed.potential)}});
    }
    return json{{"fixtures", std::move(list)}}.dump(2) + "\n";
}

std::string wronskian_csv(const ExtendabilityReport& rep) {
    std::string out = "r,wronskian\n";
    for (const auto& [r, v] : rep.wronskian_samples)
        out += fmt6(r) + "," + fmt6(v) + "\n";
    return out;
}

std::string distribution_csv(const ExtendabilityReport& rep) {
    std::string out = "h,rate,distribution,quadrature_error\n";
    // distribution = rate times the fixed physical prefactor sqrt(2)/(4 pi^2)
    const double k = std::sqrt(2.0) / (4.0 * M_PI * M_PI);
    for (const RateSample& s : rep.rate_samples)
        out += fmt6(s.h) + "," + fmt6(s.value) + "," + fmt6(k * s.value) +
               "," + fmt6(s.error) + "\n";
    return out;
}

std::string ladder_csv(const std::vector<SolveReport>& ladder, double R,
                       const std::function<double(double)>& reference,
                       double exact_cutoff) {
    std::vector<const SolveReport*> levels;
    for (const SolveReport& rep : ladder)
        if (rep.converged) levels.push_back(&rep);
    if (levels.empty()) return "r\n";

    std::vector<RadialDensity> polys;
    polys.reserve(levels.size());
    for (const SolveReport* rep : levels)
        polys.push_back(polygon_to_density(rep->solution, rep->n, R));

    std::string out = "r";
    for (const SolveReport* rep : levels)
        out += ",n" + std::to_string(rep->n);
    const bool have_ref = static_cast<bool>(reference);
    out += have_ref ? ",ref_minus_finest" : ",step_pct_finest";
    out += "\n";

    for (int k = 0; k <= 16; ++k) {
        const double r = k * R / 16.0;
        out += fmt6(r);
        for (const RadialDensity& poly : polys) out += "," + fmt6(poly(r));
        const double fin = polys.back()(r);
        if (have_ref) {
            out += "," + fmt6(reference(r) - fin);
        } else if (polys.size() >= 2 && fin != 0.0) {
            const double prev = polys[polys.size() - 2](r);
            out += "," + fmt6(std::abs(prev - fin) / std::abs(fin) * 100.0);
        } else {
            out += ",";
        }
        out += "\n";
    }

    out += "E0n";
    for (const SolveReport* rep : levels) out += "," + fmt6(rep->cutoff_energy);
    out += ",\n";

    // L2 row: distance to the reference, or the polygon norms without one.
    std::vector<double> l2(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (have_ref && std::isfinite(levels[i]->l2_error))
            l2[i] = levels[i]->l2_error;
        else
            l2[i] = l2_error(levels[i]->solution, levels[i]->n, R,
                             have_ref ? reference
                                      : [](double) { return 0.0; });
    }
    out += have_ref ? "l2" : "norm";
    for (double v : l2) out += "," + fmt6(v);
    out += ",\n";

    if (std::isfinite(exact_cutoff) && exact_cutoff != 0.0) {
        out += "e0_error_pct";
        for (const SolveReport* rep : levels)
            out += "," + fmt6(std::abs(exact_cutoff - rep->cutoff_energy) /
                              std::abs(exact_cutoff) * 100.0);
        out += ",\n";
    } else {
        out += "e0_step_pct,";
        for (std::size_t i = 1; i < levels.size(); ++i)
            out += "," +
                   fmt6(std::abs(levels[i]->cutoff_energy -
                                 levels[i - 1]->cutoff_energy) /
                        std::abs(levels[i]->cutoff_energy) * 100.0);
        out += ",\n";
        out += "norm_step_pct,";
        for (std::size_t i = 1; i < l2.size(); ++i)
            out += "," + fmt6(std::abs(l2[i] - l2[i - 1]) / l2[i] * 100.0);
        out += ",\n";
    }
    return out;
}

std::string samples_csv(const std::string& x_name, const std::string& f_name,
                        const std::vector<double>& x,
                        const std::vector<double>& f) {
    std::string out = x_name + "," + f_name + "\n";
    const std::size_t m = std::min(x.size(), f.size());
    for (std::size_t i = 0; i < m; ++i)
        out += fmt6(x[i]) + "," + fmt6(f[i]) + "\n";
    return out;
}

const char* to_string(KantorovichStatus s) {
    switch (s) {
        case KantorovichStatus::satisfied: return "satisfied";
        case KantorovichStatus::not_evaluated: return "not-evaluated";
        case KantorovichStatus::failed: return "failed";
    }
    return "unknown";
}

const char* to_string(MapProvenance p) {
    switch (p) {
        case MapProvenance::closed_form: return "closed-form";
        case MapProvenance::numeric_inverse: return "numeric-inverse";
    }
    return "unknown";
}

}  // namespace ssvp
