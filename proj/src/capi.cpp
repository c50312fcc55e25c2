#include "ssvp.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssvp/collocation.hpp"
#include "ssvp/extendability.hpp"
#include "ssvp/models.hpp"
#include "ssvp/potential.hpp"
#include "ssvp/serialize.hpp"
#include "ssvp/transforms.hpp"

using namespace ssvp;

struct ssvp_model {
    ModelFixture fx;
};

struct ssvp_report {
    ExtendabilityReport rep;
    std::string verdict_name;
    std::string evidence_name;
};

struct ssvp_ladder {
    std::vector<SolveReport> levels;
    double cutoff_radius = 0.0;
    std::function<double(double)> reference;  // empty when unknown
    double exact_cutoff_energy = std::numeric_limits<double>::quiet_NaN();
};

namespace {

thread_local std::string g_last_error;

ssvp_status fail(ssvp_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

/// Run `body`, translating C++ exceptions to status codes.
template <typename F>
ssvp_status guarded(F&& body) {
    try {
        body();
        return SSVP_OK;
    } catch (const std::invalid_argument& e) {
        return fail(SSVP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(SSVP_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(SSVP_ERR_NUMERICAL, e.what());
    } catch (...) {
        return fail(SSVP_ERR_UNKNOWN, "unknown failure");
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::map<std::string, double> parse_options(const char* options_json) {
    std::map<std::string, double> params;
    if (!options_json || !*options_json) return params;
    nlohmann::json j = nlohmann::json::parse(options_json, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw std::invalid_argument(
            "options must be a JSON object of numeric parameters");
    for (const auto& [key, val] : j.items()) {
        if (!val.is_number())
            throw std::invalid_argument("option '" + key +
                                        "' must be numeric");
        params[key] = val.get<double>();
    }
    return params;
}

const RadialDensity& require_density(const ssvp_model* m) {
    if (!m->fx.density)
        throw std::invalid_argument("fixture '" + m->fx.name +
                                    "' carries no radial density");
    return *m->fx.density;
}

}  // namespace

extern "C" {

const char* ssvp_version(void) { return "0.1.0"; }

const char* ssvp_last_error(void) { return g_last_error.c_str(); }

void ssvp_free(char* s) { std::free(s); }

ssvp_status ssvp_model_open(const char* name, const char* options_json,
                            ssvp_model** out) {
    if (!name || !out)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto params = parse_options(options_json);
        auto m = std::make_unique<ssvp_model>();
        m->fx = fixture(name, params);
        *out = m.release();
    });
}

void ssvp_model_close(ssvp_model* m) { delete m; }

ssvp_status ssvp_models_list_json(char** out_json) {
    if (!out_json) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out_json = copy_string(models_json()); });
}

ssvp_status ssvp_model_name(const ssvp_model* m, const char** out) {
    if (!m || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = m->fx.name.c_str();
    return SSVP_OK;
}

ssvp_status ssvp_model_tag(const ssvp_model* m, const char** out) {
    if (!m || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = to_string(m->fx.tag);
    return SSVP_OK;
}

ssvp_status ssvp_model_cutoff(const ssvp_model* m, double* out) {
    if (!m || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = require_density(m).cutoff(); });
}

ssvp_status ssvp_model_eval(const ssvp_model* m, const char* which, double x,
                            double* out) {
    if (!m || !which || !out)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string what = which;
        const ModelFixture& fx = m->fx;
        if (what == "density") {
            *out = require_density(m)(x);
        } else if (what == "density-derivative") {
            *out = require_density(m).derivative(x);
        } else if (what == "potential") {
            *out = potential_value(require_density(m), x);
        } else if (what == "potential-derivative") {
            *out = potential_derivative(require_density(m), x);
        } else if (what == "wronskian") {
            *out = wronskian(require_density(m), x);
        } else if (what == "slice") {
            if (fx.density)
                *out = build_energy_slice(*fx.density).value(x);
            else if (fx.closed.slice)
                *out = fx.closed.slice(x);
            else
                throw std::domain_error("fixture has no energy slice");
        } else if (what == "distribution") {
            if (fx.density)
                *out = recover_distribution(*fx.density, x);
            else if (fx.closed.distribution)
                *out = fx.closed.distribution(x);
            else
                throw std::domain_error("fixture has no distribution");
        } else {
            throw std::invalid_argument("unknown quantity '" + what + "'");
        }
    });
}

ssvp_status ssvp_inverse_run(const ssvp_model* m, size_t grid,
                             ssvp_report** out) {
    if (!m || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        const RadialDensity& p = require_density(m);
        auto rep = std::make_unique<ssvp_report>();
        rep->rep = extendability_verdict(p, grid ? grid : 256);
        rep->verdict_name = to_string(rep->rep.verdict);
        rep->evidence_name = to_string(rep->rep.evidence);
        *out = rep.release();
    });
}

void ssvp_report_close(ssvp_report* rep) { delete rep; }

ssvp_status ssvp_report_verdict(const ssvp_report* rep, const char** out) {
    if (!rep || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = rep->verdict_name.c_str();
    return SSVP_OK;
}

ssvp_status ssvp_report_evidence(const ssvp_report* rep, const char** out) {
    if (!rep || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = rep->evidence_name.c_str();
    return SSVP_OK;
}

ssvp_status ssvp_report_json(const ssvp_report* rep, char** out_json) {
    if (!rep || !out_json)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out_json = copy_string(report_json(rep->rep)); });
}

ssvp_status ssvp_report_csv(const ssvp_report* rep, const char* which,
                            char** out_csv) {
    if (!rep || !which || !out_csv)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string what = which;
        if (what == "wronskian")
            *out_csv = copy_string(wronskian_csv(rep->rep));
        else if (what == "distribution")
            *out_csv = copy_string(distribution_csv(rep->rep));
        else
            throw std::invalid_argument("unknown csv artifact '" + what +
                                        "'");
    });
}

ssvp_status ssvp_direct_run(const ssvp_model* m, double R, int n_max,
                            ssvp_ladder** out) {
    if (!m || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        const ModelFixture& fx = m->fx;
        if (!fx.map)
            throw std::invalid_argument(
                "fixture '" + fx.name +
                "' has no energy map for the direct problem");
        if (!(R > 0.0))
            throw std::domain_error("cutoff radius must be positive");
        auto l = std::make_unique<ssvp_ladder>();
        l->cutoff_radius = R;
        if (fx.density) {
            RadialDensity p = *fx.density;
            l->reference = [p](double r) { return p(r); };
        }
        l->exact_cutoff_energy = fx.closed.cutoff_energy;
        l->levels = refinement_ladder(*fx.map, R, n_max, l->reference);
        *out = l.release();
    });
}

void ssvp_ladder_close(ssvp_ladder* l) { delete l; }

ssvp_status ssvp_ladder_levels(const ssvp_ladder* l, size_t* out) {
    if (!l || !out) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    *out = l->levels.size();
    return SSVP_OK;
}

ssvp_status ssvp_ladder_level_info(const ssvp_ladder* l, size_t index,
                                   int* n, int* converged,
                                   double* cutoff_energy, double* l2) {
    if (!l) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= l->levels.size())
        return fail(SSVP_ERR_INVALID_ARGUMENT, "level index out of range");
    const SolveReport& rep = l->levels[index];
    if (n) *n = rep.n;
    if (converged) *converged = rep.converged ? 1 : 0;
    if (cutoff_energy) *cutoff_energy = rep.cutoff_energy;
    if (l2) *l2 = rep.l2_error;
    return SSVP_OK;
}

ssvp_status ssvp_ladder_solution(const ssvp_ladder* l, size_t index,
                                 double* buf, size_t buflen,
                                 size_t* written) {
    if (!l || !buf) return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= l->levels.size())
        return fail(SSVP_ERR_INVALID_ARGUMENT, "level index out of range");
    const Eigen::VectorXd& x = l->levels[index].solution;
    const size_t count = static_cast<size_t>(x.size());
    if (buflen < count)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "buffer too small");
    for (size_t i = 0; i < count; ++i) buf[i] = x[static_cast<long>(i)];
    if (written) *written = count;
    return SSVP_OK;
}

ssvp_status ssvp_ladder_json(const ssvp_ladder* l, char** out_json) {
    if (!l || !out_json)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out_json = copy_string(ladder_json(l->levels)); });
}

ssvp_status ssvp_ladder_csv(const ssvp_ladder* l, char** out_csv) {
    if (!l || !out_csv)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out_csv = copy_string(ladder_csv(l->levels, l->cutoff_radius,
                                          l->reference,
                                          l->exact_cutoff_energy));
    });
}

ssvp_status ssvp_transform(const char* kind, ssvp_real_fn g, void* ctx,
                           double upper, size_t n_samples, double* out_x,
                           double* out_f) {
    if (!kind || !g || !out_x || !out_f)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "null argument");
    if (!(upper > 0.0))
        return fail(SSVP_ERR_DOMAIN, "upper bound must be positive");
    if (n_samples == 0)
        return fail(SSVP_ERR_INVALID_ARGUMENT, "need at least one sample");
    return guarded([&] {
        const std::string what = kind;
        HalfLineFunction f;
        f.upper = upper;
        f.value = [g, ctx](double x) { return g(x, ctx); };
        if (what == "eddington-invert") {
            // The inversion consumes g'; provide a central difference when
            // the caller can only supply values.
            const double step = 1e-6 * upper;
            f.derivative = [g, ctx, step](double x) {
                const double lo = std::max(x - step, 0.0);
                const double hi = x + step;
                return (g(hi, ctx) - g(lo, ctx)) / (hi - lo);
            };
        }
        std::function<double(double)> apply;
        if (what == "abel-forward")
            apply = [&f](double x) { return abel_forward(f, x); };
        else if (what == "abel-invert")
            apply = [&f](double x) { return abel_invert(f, x); };
        else if (what == "eddington-forward")
            apply = [&f](double x) { return eddington_forward(f, x); };
        else if (what == "eddington-invert")
            apply = [&f](double x) { return eddington_invert(f, x); };
        else
            throw std::invalid_argument("unknown transform '" + what + "'");
        for (size_t i = 0; i < n_samples; ++i) {
            const double x =
                upper * static_cast<double>(i + 1) /
                static_cast<double>(n_samples);
            out_x[i] = x;
            out_f[i] = apply(x);
        }
    });
}

}  // extern "C"
