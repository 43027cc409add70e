// Fixed-point solver for the semilinear nonlocal problem: iterate
//   (F mu)(t) = F(t - t0)(xi0 - Phi(mu)) + int_{t0}^t K(t - s) phi(s, mu(sigma(s))) ds
// on the weighted trajectory space until successive sweeps agree. Each sweep
// reads only the previous iterate, so delays may look forward in time.
#pragma once

#include <hilfer/errors.hpp>
#include <hilfer/operator_families.hpp>
#include <hilfer/problem.hpp>
#include <hilfer/trajectory.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace hilfer {

struct IterationDiagnostics {
    std::vector<double> differences;    // d_n = weighted distance of sweep n to n-1
    std::vector<double> ratios;         // d_{n+1} / d_n
    std::vector<double> iterate_norms;  // weighted norm after each sweep
    std::size_t iterations = 0;
    bool converged = false;
    double final_residual = 0.0;
};

namespace detail {

// Homogeneous trajectory F(t - t0) base in weighted form.
inline Trajectory homogeneous_trajectory(const FamilyCache& cache, const Grid& grid,
                                         const Eigen::VectorXd& base) {
    return representation_sweep(cache, grid, base, {});
}

inline Trajectory apply_semilinear(const Trajectory& traj, const Problem& prob,
                                   const FamilyCache& cache) {
    const Eigen::VectorXd base = prob.xi0 - prob.nonlocal.eval(traj);
    if (prob.nonlin.kind == NonlinSpec::Kind::zero)
        return homogeneous_trajectory(cache, traj.grid, base);
    std::vector<Eigen::VectorXd> p;
    p.reserve(traj.grid.nodes.size());
    for (double t : traj.grid.nodes)
        p.push_back(prob.nonlin.eval(t, eval_delay(traj, prob.delay, t)));
    return representation_sweep(cache, traj.grid, base, p);
}

}  // namespace detail

// One application of the solution operator to a trajectory on its own grid.
inline Trajectory apply_F(const Trajectory& traj, const Problem& prob,
                          double tol = 1e-12) {
    prob.validate();
    traj.validate();
    const detail::FamilyCache cache =
        detail::build_family_cache(prob.gen, prob.alpha, prob.beta, traj.grid, tol);
    return detail::apply_semilinear(traj, prob, cache);
}

// Iterates the solution operator from the homogeneous linear trajectory until
// the weighted distance between consecutive sweeps drops below tol. The
// trajectory returned is the one whose measured update was below tol, so its
// fixed-point residual is the reported final_residual by construction.
inline std::pair<Trajectory, IterationDiagnostics> solve_mild(
    const Problem& prob, const Grid& grid, double tol = 1e-8,
    std::size_t max_iter = 64, double ml_tol = 1e-12,
    const Trajectory* initial = nullptr) {
    prob.validate();
    grid.validate();
    if (!(tol > 0.0)) throw InvalidParams("fixed point: tol must be positive");
    if (max_iter < 1) throw InvalidParams("fixed point: max_iter must be >= 1");
    const detail::FamilyCache cache =
        detail::build_family_cache(prob.gen, prob.alpha, prob.beta, grid, ml_tol);

    Trajectory mu;
    if (initial != nullptr) {
        mu = *initial;
        mu.validate();
        if (mu.grid.nodes.size() != grid.nodes.size())
            throw InvalidParams("fixed point: initial iterate must live on the solve grid");
    } else {
        mu = detail::homogeneous_trajectory(cache, grid, prob.xi0);
    }

    IterationDiagnostics diag;
    double last = 0.0;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        const Trajectory nu = detail::apply_semilinear(mu, prob, cache);
        const double d = weighted_distance(nu, mu);
        diag.iterations = it;
        diag.differences.push_back(d);
        diag.iterate_norms.push_back(weighted_norm(nu));
        if (diag.differences.size() >= 2) {
            const double prev = diag.differences[diag.differences.size() - 2];
            diag.ratios.push_back(prev > 0.0 ? d / prev : 0.0);
        }
        last = d;
        if (d < tol) {
            diag.converged = true;
            diag.final_residual = d;
            return {mu, diag};
        }
        mu = nu;
    }
    throw MaxIterExceeded("fixed point: iteration did not reach tolerance", last,
                          max_iter);
}

}  // namespace hilfer
