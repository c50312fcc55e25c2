#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ssvp/density.hpp"

namespace ssvp {

/// How an energy map was obtained.
enum class MapProvenance { closed_form, numeric_inverse };

/// Strictly increasing map from density values to relative potential depths.
///
/// `value` sends a density level t in [0, domain_upper) to the relative
/// potential G(t) at which the modelled profile attains that level; G(0) = 0.
/// `second_derivative` and `inverse_value` (the forward map F with
/// F(G(t)) = t) are optional and may be left empty.
struct EnergyMap {
    double domain_upper = std::numeric_limits<double>::infinity();
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::function<double(double)> second_derivative;  // optional
    std::function<double(double)> inverse_value;      // optional
    MapProvenance provenance = MapProvenance::closed_form;
};

/// Position of a linear density segment relative to the evaluation radius.
/// "rise" ramps 0 -> 1 over [e0, e1], "fall" ramps 1 -> 0.
enum class SegmentKind { interior_rise, interior_fall, exterior_rise, exterior_fall };

/// Potential of one linear segment at radius r, in closed form.
/// interior kinds require 0 <= r <= e0 < e1; exterior kinds e0 < e1 <= r.
/// Throws std::domain_error on an ordering violation (including e0 == e1).
double segment_potential(SegmentKind kind, double e0, double e1, double r);

/// Potentials of the hat basis evaluated at the collocation nodes:
/// entry (i, k) is the potential of the hat centred at node k R/n, taken at
/// radius i R/n, for i, k = 0..n-1. Every entry is positive.
Eigen::MatrixXd hat_potential_matrix(int n, double R);

/// Potentials of the hat basis evaluated at the cutoff radius R (one entry
/// per basis function). The cutoff energy of a polygon with node values x
/// is the dot product of this vector with x.
Eigen::VectorXd hat_cutoff_potentials(int n, double R);

/// Discretised direct problem: find node values x with
/// (matrix * x)_i = map.value(x_i) for every node.
struct CollocationSystem {
    int n = 0;
    double cutoff = 0.0;
    Eigen::VectorXd nodes;          ///< k R/n for k = 0..n (n + 1 entries)
    Eigen::MatrixXd matrix;         ///< hat potentials minus the cutoff column
    Eigen::VectorXd cutoff_column;  ///< hat potentials at R
    EnergyMap map;
};

CollocationSystem build_system(int n, double R, EnergyMap map);

enum class KantorovichStatus { satisfied, not_evaluated, failed };

/// Constants of the semi-local convergence test at the Newton start vector:
/// beta = ||J^-1||_inf, eta = ||J^-1 F||_inf, curvature_bound = sup of the
/// map's second derivative over the box of radius 2 eta around the start,
/// indicator = beta * eta * curvature_bound. Satisfied iff indicator <= 1/2.
struct KantorovichReport {
    KantorovichStatus status = KantorovichStatus::not_evaluated;
    double beta = 0.0;
    double eta = 0.0;
    double curvature_bound = 0.0;
    double indicator = 0.0;
};

struct SolveReport {
    bool converged = false;
    std::string failure;  ///< empty when converged
    int n = 0;
    int iterations = 0;
    Eigen::VectorXd solution;
    double cutoff_energy = 0.0;  ///< dot(cutoff_column, solution)
    double residual_norm = 0.0;  ///< max-norm of matrix*x - map(x)
    bool clamped = false;        ///< a component hit the positivity floor
    KantorovichReport kantorovich;
    double l2_error = std::numeric_limits<double>::quiet_NaN();  // optional
};

/// Damped Newton iteration on F(x) = matrix * x - map.value(x_i).
/// Steps are halved (at most 30 times) while an update would leave the
/// positive cone; components below 1e-14 are clamped there and flagged.
/// Stops when the step max-norm is <= 1e-9 times the iterate max-norm;
/// singularity or 50 iterations without convergence yield a failure report.
SolveReport newton_solve(const CollocationSystem& sys, const Eigen::VectorXd& start);

/// Convergence test at a prospective Newton start. Needs the map's second
/// derivative; reports not_evaluated without it.
KantorovichReport kantorovich_check(const CollocationSystem& sys,
                                    const Eigen::VectorXd& x0);

/// Solve on n = 1, 2, 4, ..., n_max (n_max a power of two), warm-starting
/// each level with the previous polygon evaluated at the new nodes. The
/// n = 1 scalar equation is solved by bisection. When `reference` is given,
/// each report carries the L2 error of its polygon against it.
std::vector<SolveReport> refinement_ladder(
    const EnergyMap& map, double R, int n_max,
    const std::function<double(double)>& reference = {});

/// Piecewise-linear density through (k R/n, x_k), k = 0..n-1, and (R, 0).
RadialDensity polygon_to_density(const Eigen::VectorXd& x, int n, double R);

/// L2 distance on [0, R] between the polygon with node values x and a
/// reference profile, by composite quadrature (1024 panels per segment).
/// A zero reference yields the polygon's own L2 norm.
double l2_error(const Eigen::VectorXd& x, int n, double R,
                const std::function<double(double)>& reference);

/// Energy map of a profile known only through its distribution of states q:
/// the forward map is tabulated on a 2048-point grid over [0, h_max] and
/// inverted by bisection with local cubic interpolation. The derivative is
/// exact (an integral of q); no second derivative is provided.
EnergyMap energy_map_from_distribution(const std::function<double(double)>& q,
                                       double h_max);

}  // namespace ssvp
