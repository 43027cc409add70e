// Weighted-space trajectories: vector-valued functions sampled on a grid,
// stored as w(t) xi(t) with w(t) = (t - t0)^{1-gamma} so nothing singular is
// ever kept in memory. Node 0 stores the weighted limit as t -> t0+.
#pragma once

#include <hilfer/errors.hpp>
#include <hilfer/gamma.hpp>
#include <hilfer/grid.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hilfer {

struct Trajectory {
    Grid grid;
    double gamma = 1.0;
    // Startup exponent: solutions leave the left endpoint like (t - t0)^alpha
    // on top of the weight, and interpolation is performed in the (t - t0)^alpha
    // coordinate so that this leading mode is reproduced exactly. 1 means
    // plain linear interpolation.
    double alpha = 1.0;
    std::vector<Eigen::VectorXd> weighted_values;

    Eigen::Index dim() const {
        return weighted_values.empty() ? 0 : weighted_values.front().size();
    }

    // w(tau_j); 0 at the first node when gamma < 1 (the stored entry there is
    // the finite weighted limit, not w * xi).
    double weight(std::size_t j) const {
        if (gamma == 1.0) return 1.0;
        return std::pow(grid.nodes[j] - grid.t0, 1.0 - gamma);
    }

    // Unweighted xi(tau_j). The left endpoint is a pole of xi when gamma < 1.
    Eigen::VectorXd value_at(std::size_t j) const {
        if (j == 0 && gamma < 1.0)
            throw SingularEndpoint(
                "unweighted value at the left endpoint does not exist for gamma < 1; "
                "use the weighted representation");
        return weighted_values[j] / weight(j);
    }

    void validate() const {
        grid.validate();
        if (!(gamma > 0.0) || !(gamma <= 1.0) || !std::isfinite(gamma))
            throw InvalidParams("trajectory: gamma must lie in (0, 1]");
        if (!(alpha > 0.0) || !(alpha <= 1.0) || !std::isfinite(alpha))
            throw InvalidParams("trajectory: alpha must lie in (0, 1]");
        if (weighted_values.size() != grid.nodes.size())
            throw InvalidParams("trajectory: one weighted value per grid node required");
        const Eigen::Index d = dim();
        if (d == 0) throw InvalidParams("trajectory: empty state");
        for (const auto& v : weighted_values) {
            if (v.size() != d) throw InvalidParams("trajectory: inconsistent state dimension");
            if (!v.allFinite()) throw InvalidParams("trajectory: non-finite weighted value");
        }
    }
};

// Sup over nodes of the Euclidean norm of the weighted values: the norm of
// the weighted continuous-function space, restricted to the grid.
inline double weighted_norm(const Trajectory& traj) {
    double m = 0.0;
    for (const auto& v : traj.weighted_values) m = std::max(m, v.norm());
    return m;
}

inline double weighted_distance(const Trajectory& x, const Trajectory& y) {
    double m = 0.0;
    for (std::size_t j = 0; j < x.weighted_values.size(); ++j)
        m = std::max(m, (x.weighted_values[j] - y.weighted_values[j]).norm());
    return m;
}

namespace detail {

// Interpolation of the weighted values at an arbitrary time inside the
// horizon. Ties at grid nodes resolve to the node value. Between nodes the
// blend runs linearly in (t - t0)^alpha, which reproduces the startup mode
// exactly and degrades gracefully to linear interpolation away from t0 (and
// everywhere when alpha = 1).
inline Eigen::VectorXd interp_weighted(const Trajectory& traj, double t) {
    const auto& nodes = traj.grid.nodes;
    const double scale = std::max(1.0, std::fabs(nodes.front()) + std::fabs(nodes.back()));
    const double tie = 1e-12 * scale;
    const double tc = std::clamp(t, nodes.front(), nodes.back());
    auto it = std::upper_bound(nodes.begin(), nodes.end(), tc);
    std::size_t hi = std::min<std::size_t>(
        std::max<std::ptrdiff_t>(it - nodes.begin(), 1), nodes.size() - 1);
    const std::size_t lo = hi - 1;
    if (std::fabs(tc - nodes[lo]) <= tie) return traj.weighted_values[lo];
    if (std::fabs(tc - nodes[hi]) <= tie) return traj.weighted_values[hi];
    double theta;
    if (traj.alpha < 1.0) {
        const double t0 = traj.grid.t0;
        const double plo = std::pow(nodes[lo] - t0, traj.alpha);
        const double phi = std::pow(nodes[hi] - t0, traj.alpha);
        theta = (std::pow(tc - t0, traj.alpha) - plo) / (phi - plo);
    } else {
        theta = (tc - nodes[lo]) / (nodes[hi] - nodes[lo]);
    }
    return (1.0 - theta) * traj.weighted_values[lo] + theta * traj.weighted_values[hi];
}

}  // namespace detail

// Unweighted xi(t) for t in (t0, t0+a], interpolated linearly in the weighted
// representation and then unweighted. At t = t0 the unweighted value does not
// exist when gamma < 1; the finite representative Gamma(gamma) * (weighted
// limit) is returned instead, which equals the initial-condition limit of the
// (1-gamma)-order integral of xi. For gamma = 1 this is just xi(t0).
inline Eigen::VectorXd value_at(const Trajectory& traj, double t) {
    const auto& nodes = traj.grid.nodes;
    const double scale = std::max(1.0, std::fabs(nodes.front()) + std::fabs(nodes.back()));
    if (t <= nodes.front() + 1e-12 * scale) {
        if (traj.gamma == 1.0) return traj.weighted_values.front();
        return traj.weighted_values.front() / recip_gamma(traj.gamma);
    }
    const Eigen::VectorXd w = detail::interp_weighted(traj, t);
    if (traj.gamma == 1.0) return w;
    return w / std::pow(std::min(t, nodes.back()) - traj.grid.t0, 1.0 - traj.gamma);
}

}  // namespace hilfer
