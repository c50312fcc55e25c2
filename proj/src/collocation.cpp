#include "ssvp/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "ssvp/quadrature.hpp"
#include "ssvp/transforms.hpp"

namespace ssvp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 4.0 * kPi;

// Positivity floor for Newton iterates; see the solver contract.
constexpr double kFloor = 1e-14;

Eigen::VectorXd system_residual(const CollocationSystem& sys, const Eigen::VectorXd& x) {
    Eigen::VectorXd F = sys.matrix * x;
    for (int i = 0; i < sys.n; ++i) F[i] -= sys.map.value(x[i]);
    return F;
}

Eigen::MatrixXd system_jacobian(const CollocationSystem& sys, const Eigen::VectorXd& x) {
    Eigen::MatrixXd J = sys.matrix;
    for (int i = 0; i < sys.n; ++i) J(i, i) -= sys.map.derivative(x[i]);
    return J;
}

// Tabulated strictly increasing forward map and its cubic inverse lookup.
struct ForwardTable {
    std::vector<double> depth;   // grid over [0, h_max]
    std::vector<double> level;   // forward map values, strictly increasing

    double invert(double t) const {
        const auto n = static_cast<int>(level.size());
        if (t < level.front() || t > level.back())
            throw std::domain_error("energy map argument outside tabulated range");
        int j = static_cast<int>(std::upper_bound(level.begin(), level.end(), t) -
                                 level.begin()) - 1;
        int m0 = std::clamp(j - 1, 0, n - 4);
        double out = 0.0;
        for (int m = m0; m < m0 + 4; ++m) {
            double w = depth[m];
            for (int l = m0; l < m0 + 4; ++l)
                if (l != m) w *= (t - level[l]) / (level[m] - level[l]);
            out += w;
        }
        return out;
    }
};

}  // namespace

double segment_potential(SegmentKind kind, double e0, double e1, double r) {
    if (!(e0 >= 0.0) || !(e0 < e1))
        throw std::domain_error("segment endpoints must satisfy 0 <= e0 < e1");
    const bool interior =
        kind == SegmentKind::interior_rise || kind == SegmentKind::interior_fall;
    if (interior) {
        if (!(r >= 0.0) || !(r <= e0))
            throw std::domain_error("interior segment requires 0 <= r <= e0");
    } else {
        if (!(r >= e1))
            throw std::domain_error("exterior segment requires r >= e1");
    }
    switch (kind) {
        case SegmentKind::interior_rise:
            return kFourPi / 3.0 * (e1 * e1 - e0 * (e1 + e0) / 2.0);
        case SegmentKind::interior_fall:
            return kFourPi / 3.0 * (e1 * (e1 + e0) / 2.0 - e0 * e0);
        case SegmentKind::exterior_rise:
            return kPi / r * (e1 * e1 * e1 - (e1 * e1 * e0 + e1 * e0 * e0 + e0 * e0 * e0) / 3.0);
        case SegmentKind::exterior_fall:
            return kPi / r * ((e1 * e1 * e1 + e1 * e1 * e0 + e1 * e0 * e0) / 3.0 - e0 * e0 * e0);
    }
    throw std::domain_error("unknown segment kind");
}

Eigen::MatrixXd hat_potential_matrix(int n, double R) {
    if (n < 1 || !(R > 0.0))
        throw std::invalid_argument("hat_potential_matrix requires n >= 1 and R > 0");
    const double h2 = (R / n) * (R / n);
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            double v;
            if (k == 0) {
                v = (i == 0) ? 2.0 * kPi / 3.0 * h2 : kPi / 3.0 * h2 / i;
            } else if (i < k) {
                v = kFourPi * h2 * k;  // evaluation point below the hat support
            } else if (i == k) {
                v = kFourPi * h2 * (k - 1.0 / 6.0 + 1.0 / (12.0 * k));
            } else {
                v = kFourPi * h2 * (k * k + 1.0 / 6.0) / i;
            }
            B(i, k) = v;
        }
    }
    return B;
}

Eigen::VectorXd hat_cutoff_potentials(int n, double R) {
    if (n < 1 || !(R > 0.0))
        throw std::invalid_argument("hat_cutoff_potentials requires n >= 1 and R > 0");
    const double h = R / n;
    Eigen::VectorXd C(n);
    C[0] = kPi / (3.0 * R) * h * h * h;
    for (int k = 1; k < n; ++k) C[k] = kFourPi / n * h * h * (k * k + 1.0 / 6.0);
    return C;
}

CollocationSystem build_system(int n, double R, EnergyMap map) {
    if (!map.value || !map.derivative)
        throw std::invalid_argument("energy map needs value and derivative evaluators");
    CollocationSystem sys;
    sys.n = n;
    sys.cutoff = R;
    sys.nodes.resize(n + 1);
    for (int k = 0; k <= n; ++k) sys.nodes[k] = k * R / n;
    Eigen::MatrixXd B = hat_potential_matrix(n, R);
    sys.cutoff_column = hat_cutoff_potentials(n, R);
    sys.matrix = B.rowwise() - sys.cutoff_column.transpose();
    sys.map = std::move(map);
    return sys;
}

KantorovichReport kantorovich_check(const CollocationSystem& sys,
                                    const Eigen::VectorXd& x0) {
    KantorovichReport rep;
    if (!sys.map.second_derivative) return rep;  // not_evaluated

    Eigen::MatrixXd J = system_jacobian(sys, x0);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    Eigen::MatrixXd Jinv = lu.inverse();
    Eigen::VectorXd step = lu.solve(system_residual(sys, x0));
    if (!Jinv.allFinite() || !step.allFinite()) {
        rep.status = KantorovichStatus::failed;
        rep.beta = rep.eta = rep.curvature_bound = rep.indicator =
            std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.beta = Jinv.cwiseAbs().rowwise().sum().maxCoeff();
    rep.eta = step.lpNorm<Eigen::Infinity>();

    // Curvature bound over the box of radius 2 eta around the start,
    // intersected with the positive axis (uniform sampled estimate; grid
    // points at or below zero violate positivity and are skipped).
    double hi = x0.maxCoeff() + 2.0 * rep.eta;
    double lo = std::max(x0.minCoeff() - 2.0 * rep.eta, 0.0);
    const int samples = 2048;
    double bound = 0.0;
    for (int j = 0; j <= samples; ++j) {
        double t = lo + (hi - lo) * j / samples;
        if (t <= 0.0) continue;
        bound = std::max(bound, std::abs(sys.map.second_derivative(t)));
    }
    rep.curvature_bound = bound;
    rep.indicator = rep.beta * rep.eta * bound;
    rep.status = (std::isfinite(rep.indicator) && rep.indicator <= 0.5)
                     ? KantorovichStatus::satisfied
                     : KantorovichStatus::failed;
    return rep;
}

SolveReport newton_solve(const CollocationSystem& sys, const Eigen::VectorXd& start) {
    const int n = sys.n;
    if (start.size() != n)
        throw std::invalid_argument("start vector size does not match the system");
    if ((start.array() <= 0.0).any())
        throw std::invalid_argument("newton start must be strictly positive");

    SolveReport rep;
    rep.n = n;
    rep.solution = start;
    rep.kantorovich = kantorovich_check(sys, start);

    Eigen::VectorXd x = start;
    for (int it = 1; it <= 50; ++it) {
        Eigen::VectorXd F = system_residual(sys, x);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(system_jacobian(sys, x));
        Eigen::VectorXd d = lu.solve(F);
        // Partial pivoting does not signal rank loss; test the solve instead.
        if (!d.allFinite() ||
            (system_jacobian(sys, x) * d - F).lpNorm<Eigen::Infinity>() >
                1e-6 * (1.0 + F.lpNorm<Eigen::Infinity>())) {
            rep.failure = "singular jacobian";
            rep.iterations = it;
            rep.solution = x;
            rep.residual_norm = F.lpNorm<Eigen::Infinity>();
            rep.cutoff_energy = sys.cutoff_column.dot(x);
            return rep;
        }

        double scale = 1.0;
        Eigen::VectorXd next = x - d;
        for (int halvings = 0; (next.array() <= 0.0).any() && halvings < 30; ++halvings) {
            scale *= 0.5;
            next = x - scale * d;
        }
        for (int i = 0; i < n; ++i) {
            if (next[i] < kFloor) {
                next[i] = kFloor;
                rep.clamped = true;
            }
        }

        double step = scale * d.lpNorm<Eigen::Infinity>();
        x = next;
        rep.iterations = it;
        if (step <= 1e-9 * x.lpNorm<Eigen::Infinity>()) {
            rep.converged = true;
            break;
        }
    }

    rep.solution = x;
    rep.residual_norm = system_residual(sys, x).lpNorm<Eigen::Infinity>();
    rep.cutoff_energy = sys.cutoff_column.dot(x);
    if (!rep.converged) rep.failure = "no convergence within 50 iterations";
    return rep;
}

RadialDensity polygon_to_density(const Eigen::VectorXd& x, int n, double R) {
    if (x.size() != n) throw std::invalid_argument("node value count does not match n");
    return RadialDensity::polygon(std::vector<double>(x.data(), x.data() + n), R);
}

double l2_error(const Eigen::VectorXd& x, int n, double R,
                const std::function<double(double)>& reference) {
    if (!reference) throw std::invalid_argument("l2_error needs a reference profile");
    RadialDensity poly = polygon_to_density(x, n, R);
    // 4-point Gauss-Legendre per panel; the squared difference is piecewise
    // smooth between polygon nodes, so panels never straddle a kink.
    static const double node[2] = {0.3399810435848563, 0.8611363115940526};
    static const double weight[2] = {0.6521451548625461, 0.3478548451374538};
    const int panels = 1024;
    double total = 0.0;
    for (int seg = 0; seg < n; ++seg) {
        double a = seg * R / n;
        double width = R / n / panels;
        double acc = 0.0;
        for (int p = 0; p < panels; ++p) {
            double mid = a + (p + 0.5) * width;
            for (int g = 0; g < 2; ++g) {
                for (double sign : {-1.0, 1.0}) {
                    double r = mid + sign * 0.5 * width * node[g];
                    double d = poly(r) - reference(r);
                    acc += 0.5 * weight[g] * d * d;
                }
            }
        }
        total += acc * width;
    }
    return std::sqrt(total);
}

EnergyMap energy_map_from_distribution(const std::function<double(double)>& q,
                                       double h_max) {
    if (!q || !(h_max > 0.0))
        throw std::invalid_argument("energy_map_from_distribution needs q and h_max > 0");
    HalfLineFunction qf;
    qf.upper = h_max;
    qf.value = q;

    const int grid = 2048;
    auto table = std::make_shared<ForwardTable>();
    table->depth.resize(grid);
    table->level.resize(grid);
    for (int j = 0; j < grid; ++j) {
        double h = h_max * j / (grid - 1);
        table->depth[j] = h;
        table->level[j] = eddington_forward(qf, h);
        if (j > 0 && !(table->level[j] > table->level[j - 1]))
            throw std::domain_error("forward map is not strictly increasing on the grid");
    }

    EnergyMap map;
    map.provenance = MapProvenance::numeric_inverse;
    map.domain_upper = table->level.back();
    map.value = [table](double t) { return table->invert(t); };
    map.derivative = [table, qf](double t) {
        double h = table->invert(t);
        double slope = 2.0 * std::sqrt(2.0) * kPi * abel_forward(qf, h);
        return 1.0 / slope;
    };
    map.inverse_value = [qf](double h) { return eddington_forward(qf, h); };
    return map;
}

std::vector<SolveReport> refinement_ladder(
    const EnergyMap& map, double R, int n_max,
    const std::function<double(double)>& reference) {
    if (n_max < 1 || (n_max & (n_max - 1)) != 0)
        throw std::invalid_argument("n_max must be a power of two");

    std::vector<SolveReport> out;

    // n = 1: scalar equation, solved by bisection on a growing bracket.
    CollocationSystem sys = build_system(1, R, map);
    const double a00 = sys.matrix(0, 0);
    auto scalar = [&](double t) { return a00 * t - map.value(t); };
    double hi = 1.0;
    double lo = 1e-12 * hi;
    int growth = 0;
    while (scalar(lo) * scalar(hi) > 0.0 && growth < 200) {
        hi *= 2.0;
        lo = 1e-12 * hi;
        ++growth;
    }
    SolveReport first;
    first.n = 1;
    if (scalar(lo) * scalar(hi) > 0.0) {
        first.failure = "bisection bracket not found for the coarsest level";
        first.solution = Eigen::VectorXd::Zero(1);
        out.push_back(std::move(first));
        return out;
    }
    double root = bisect(scalar, lo, hi, 1e-12 * hi);
    first.converged = true;
    first.solution = Eigen::VectorXd::Constant(1, root);
    first.residual_norm = std::abs(scalar(root));
    first.cutoff_energy = sys.cutoff_column.dot(first.solution);
    if (reference) first.l2_error = l2_error(first.solution, 1, R, reference);
    out.push_back(std::move(first));

    for (int n = 2; n <= n_max; n *= 2) {
        const SolveReport& prev = out.back();
        if (!prev.converged) break;
        RadialDensity coarse = polygon_to_density(prev.solution, prev.n, R);
        Eigen::VectorXd start(n);
        for (int i = 0; i < n; ++i) start[i] = coarse(i * R / n);

        sys = build_system(n, R, map);
        SolveReport rep;
        const double start_scale = std::max(1.0, start.lpNorm<Eigen::Infinity>());
        auto collapsed = [&](const SolveReport& r) {
            return r.clamped ||
                   r.solution.lpNorm<Eigen::Infinity>() < 1e-6 * start_scale;
        };
        try {
            // The reported convergence test belongs to the canonical
            // interpolated start even when a rescue start is used below.
            KantorovichReport kant = kantorovich_check(sys, start);
            rep = newton_solve(sys, start);
            // A start outside the attraction basin falls into the trivial
            // zero solution (iterates clamp at the positivity floor).
            // Rebuild the start by the monotone fixed-point iteration of the
            // forward map and retry once.
            if ((!rep.converged || collapsed(rep)) && sys.map.inverse_value) {
                Eigen::VectorXd y = start;
                for (int sweep = 0; sweep < 200; ++sweep) {
                    Eigen::VectorXd z = sys.matrix * y;
                    for (int i = 0; i < n; ++i) z[i] = sys.map.inverse_value(z[i]);
                    double change = (z - y).lpNorm<Eigen::Infinity>();
                    y = z;
                    if (change <= 1e-6 * y.lpNorm<Eigen::Infinity>()) break;
                }
                SolveReport retry = newton_solve(sys, y);
                if (retry.converged || !rep.converged) rep = std::move(retry);
            }
            if (rep.converged && collapsed(rep)) {
                rep.converged = false;
                rep.failure = "collapsed to the trivial zero solution";
            }
            rep.kantorovich = kant;
        } catch (const std::exception& e) {
            rep = SolveReport{};
            rep.n = n;
            rep.failure = e.what();
            rep.solution = start;
        }
        if (rep.converged && reference)
            rep.l2_error = l2_error(rep.solution, n, R, reference);
        out.push_back(std::move(rep));
        if (!out.back().converged) break;
    }
    return out;
}

}  // namespace ssvp
