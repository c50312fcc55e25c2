#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ssvp/collocation.hpp"
#include "ssvp/extendability.hpp"

namespace ssvp {

/// JSON artifact of an extendability run (full-precision doubles).
std::string report_json(const ExtendabilityReport& rep);

/// JSON artifact of a refinement ladder: one entry per level with the
/// solution polygon, convergence diagnostics and the Kantorovich record.
std::string ladder_json(const std::vector<SolveReport>& ladder);

/// JSON listing of the built-in fixtures (name, parameters, tag,
/// which ingredients are present).
std::string models_json();

/// CSV of the wronskian samples of a report: r,wronskian
std::string wronskian_csv(const ExtendabilityReport& rep);

/// CSV of the sampled distribution: h,rate,distribution,quadrature_error
std::string distribution_csv(const ExtendabilityReport& rep);

/// Chart-shaped CSV of a ladder: rows are the 17 radii k R/16 with one
/// column per converged level; footer rows carry the cutoff energies, the
/// L2 row (distance to the reference when given, otherwise the polygon
/// norms) and the error-percent rows (against `exact_cutoff` when finite,
/// otherwise successive relative steps).
std::string ladder_csv(const std::vector<SolveReport>& ladder, double R,
                       const std::function<double(double)>& reference = {},
                       double exact_cutoff =
                           std::numeric_limits<double>::quiet_NaN());

/// Two-column CSV of paired samples under the given headers.
std::string samples_csv(const std::string& x_name, const std::string& f_name,
                        const std::vector<double>& x,
                        const std::vector<double>& f);

const char* to_string(KantorovichStatus s);
const char* to_string(MapProvenance p);

}  // namespace ssvp
