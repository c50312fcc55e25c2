#ifndef SSVP_H
#define SSVP_H

/* C interface to the spherical-profile extendability and collocation
 * library. All handles are opaque; every function that can fail returns a
 * status code and leaves a human-readable message in ssvp_last_error()
 * (thread-local). Strings returned through char** are heap copies owned by
 * the caller; release them with ssvp_free(). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssvp_status {
    SSVP_OK = 0,
    SSVP_ERR_INVALID_ARGUMENT = 1, /* bad name, key, or handle */
    SSVP_ERR_DOMAIN = 2,           /* input outside a contract's domain */
    SSVP_ERR_NUMERICAL = 3,        /* iteration or quadrature failure */
    SSVP_ERR_UNKNOWN = 4
} ssvp_status;

typedef struct ssvp_model ssvp_model;   /* built-in profile fixture */
typedef struct ssvp_report ssvp_report; /* extendability run artifact */
typedef struct ssvp_ladder ssvp_ladder; /* refinement ladder artifact */

/* Real function callback for the transform entry points. */
typedef double (*ssvp_real_fn)(double x, void* ctx);

const char* ssvp_version(void);

/* Message of the most recent failure on this thread; never NULL. */
const char* ssvp_last_error(void);

void ssvp_free(char* s);

/* ---- models ---------------------------------------------------------- */

/* Open a built-in fixture. options_json is NULL, "", or a flat JSON object
 * of numeric parameter overrides, e.g. "{\"R\": 4.0}". Unknown names or
 * keys give SSVP_ERR_INVALID_ARGUMENT; out-of-range values SSVP_ERR_DOMAIN. */
ssvp_status ssvp_model_open(const char* name, const char* options_json,
                            ssvp_model** out);
void ssvp_model_close(ssvp_model* m);

/* JSON array of the built-in fixtures with parameters and tags. */
ssvp_status ssvp_models_list_json(char** out_json);

/* Fixture metadata. Cutoff radius: SSVP_ERR_DOMAIN when the fixture has no
 * density (and hence no cutoff). */
ssvp_status ssvp_model_name(const ssvp_model* m, const char** out);
ssvp_status ssvp_model_tag(const ssvp_model* m, const char** out);
ssvp_status ssvp_model_cutoff(const ssvp_model* m, double* out);

/* Pointwise evaluation. `which` is one of:
 *   "density", "density-derivative", "potential", "potential-derivative",
 *   "wronskian"     (argument is a radius),
 *   "slice", "distribution" (argument is an energy depth).
 * Density-backed quantities run through the generic numerical pipeline;
 * fixtures without a density fall back to their closed forms. */
ssvp_status ssvp_model_eval(const ssvp_model* m, const char* which, double x,
                            double* out);

/* ---- inverse problem -------------------------------------------------- */

/* Run the extendability decision on the fixture's density, sampling the
 * distribution on `grid` points (0 picks the default). */
ssvp_status ssvp_inverse_run(const ssvp_model* m, size_t grid,
                             ssvp_report** out);
void ssvp_report_close(ssvp_report* rep);

/* Verdict name: "extendable" | "not-extendable" | "inconclusive".
 * The pointer stays valid for the life of the report. */
ssvp_status ssvp_report_verdict(const ssvp_report* rep, const char** out);
ssvp_status ssvp_report_evidence(const ssvp_report* rep, const char** out);

ssvp_status ssvp_report_json(const ssvp_report* rep, char** out_json);

/* CSV artifacts: `which` is "wronskian" (r,wronskian) or "distribution"
 * (h,rate,distribution,quadrature_error). */
ssvp_status ssvp_report_csv(const ssvp_report* rep, const char* which,
                            char** out_csv);

/* ---- direct problem --------------------------------------------------- */

/* Solve the collocation ladder n = 1, 2, 4, ..., n_max (a power of two) on
 * [0, R]. The fixture must carry an energy map. A ladder whose last level
 * failed still comes back SSVP_OK; inspect the levels. */
ssvp_status ssvp_direct_run(const ssvp_model* m, double R, int n_max,
                            ssvp_ladder** out);
void ssvp_ladder_close(ssvp_ladder* l);

ssvp_status ssvp_ladder_levels(const ssvp_ladder* l, size_t* out);

/* Per-level scalars. Any output pointer may be NULL to skip that field.
 * l2 is NaN when no reference profile is known. */
ssvp_status ssvp_ladder_level_info(const ssvp_ladder* l, size_t index,
                                   int* n, int* converged,
                                   double* cutoff_energy, double* l2);

/* Copy the level's node values (n doubles) into buf. */
ssvp_status ssvp_ladder_solution(const ssvp_ladder* l, size_t index,
                                 double* buf, size_t buflen,
                                 size_t* written);

ssvp_status ssvp_ladder_json(const ssvp_ladder* l, char** out_json);

/* Chart-shaped CSV (17 radius rows, one column per converged level, footer
 * rows for cutoff energies, L2 column norms and error percentages). */
ssvp_status ssvp_ladder_csv(const ssvp_ladder* l, char** out_csv);

/* ---- integral transforms ---------------------------------------------- */

/* Sample a transform of g on n_samples points of (0, upper]:
 *   kind = "abel-forward" | "abel-invert" |
 *          "eddington-forward" | "eddington-invert".
 * out_x and out_f receive n_samples abscissae and values. The Abel
 * inversion probes representability first and reports SSVP_ERR_DOMAIN for
 * candidates outside the operator's range. */
ssvp_status ssvp_transform(const char* kind, ssvp_real_fn g, void* ctx,
                           double upper, size_t n_samples, double* out_x,
                           double* out_f);

#ifdef __cplusplus
}
#endif

#endif /* SSVP_H */
