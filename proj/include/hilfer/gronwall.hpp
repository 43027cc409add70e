// A-posteriori checks on a computed trajectory: the increment modulus and its
// Gronwall-type bound
//   theta(h) * E_{alpha,1}(zeta1 delta R~ C~ a^alpha Gamma(alpha)),
// the delay-compatibility constant R~, the interior defect of the strong
// equation, and the nonlocal initial-condition defect.
#pragma once

#include <hilfer/certifier.hpp>
#include <hilfer/errors.hpp>
#include <hilfer/fracops.hpp>
#include <hilfer/gamma.hpp>
#include <hilfer/mlf.hpp>
#include <hilfer/problem.hpp>
#include <hilfer/trajectory.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hilfer {

struct StrongReport {
    std::vector<double> h_values;
    std::vector<double> increments;     // max weighted increment per tested h
    std::vector<double> theta;          // theta(h) per tested h
    std::vector<double> theta_variant;  // text form with the b-proportional term
    std::vector<double> gronwall_rhs;   // theta(h) * E_alpha factor per tested h
    double lipschitz_modulus = 0.0;     // max over tested h of increment / h
    double R_tilde = 1.0;
    double c_tilde = 1.0;
    double residual_eq = 0.0;
    double residual_ic = 0.0;
};

// Maximum difference of weighted node values over a lag of h, per tested h.
// Each h must be a whole number of grid steps.
inline std::vector<double> lipschitz_modulus(const Trajectory& traj,
                                             const std::vector<double>& h_values) {
    traj.validate();
    double step = 0.0;
    if (!traj.grid.is_uniform(&step))
        throw HNotAligned("increment scan requires a uniform grid");
    const std::size_t n = traj.grid.nodes.size();
    std::vector<double> out;
    out.reserve(h_values.size());
    for (double h : h_values) {
        if (!(h > 0.0)) throw HNotAligned("increment length must be positive");
        const double ratio = h / step;
        const auto m = static_cast<std::size_t>(std::llround(ratio));
        if (m < 1 || std::fabs(ratio - static_cast<double>(m)) > 1e-9 ||
            m >= n)
            throw HNotAligned("increment length must be a grid-step multiple "
                              "inside the horizon");
        double best = 0.0;
        for (std::size_t j = 0; j + m < n; ++j)
            best = std::max(best, (traj.weighted_values[j + m] -
                                   traj.weighted_values[j]).norm());
        out.push_back(best);
    }
    return out;
}

// theta(h) from the certificate constants. The middle term r delta / b blows
// up when the delay bound degenerates; callers see +inf rather than a throw.
inline double gronwall_theta(const Certificate& cert, double h) {
    const double z1 = cert.zeta1.value;
    return 2.0 * z1 * h * cert.xi0_norm + 2.0 * z1 * cert.zeta3.value * h +
           z1 * cert.delta.value * h * cert.r / cert.b.value +
           z1 * cert.zeta2.value * h +
           z1 * cert.delta.value * h * cert.horizon;
}

// Variant with the forcing term scaled by b instead of h, kept for
// comparison; the h-scaled form is the one used in the bound.
inline double gronwall_theta_variant(const Certificate& cert, double h) {
    const double z1 = cert.zeta1.value;
    return 2.0 * z1 * h * cert.xi0_norm + 2.0 * z1 * cert.zeta3.value * h +
           z1 * cert.delta.value * h * cert.r / cert.b.value +
           z1 * cert.zeta2.value * cert.b.value +
           z1 * cert.delta.value * h * cert.horizon;
}

inline double gronwall_bound(const Certificate& cert, double R_tilde,
                             double C_tilde, double h, double alpha) {
    const double theta = gronwall_theta(cert, h);
    const double arg = cert.zeta1.value * cert.delta.value * R_tilde * C_tilde *
                       std::pow(cert.horizon, alpha) / recip_gamma(alpha);
    MLParams p;
    p.alpha = alpha;
    p.beta = 1.0;
    return theta * ml_eval(p, arg).value;
}

// Smallest constant covering |xi(sigma(s)) - xi(sigma(t))| over
// |xi(s) - xi(t)| on a deterministic family of node pairs. Pairs whose
// denominator is negligible are skipped; an identity delay gives exactly 1.
inline double estimate_R_tilde(const Trajectory& traj, const DelaySpec& delay) {
    traj.validate();
    const std::size_t n = traj.grid.nodes.size();
    const double scale = weighted_norm(traj) + 1.0;
    double best = 1.0;
    const std::size_t hop = std::max<std::size_t>(1, (n - 1) / 64);
    for (std::size_t stride = 1; stride < n - 1; stride *= 2) {
        for (std::size_t i = 1; i + stride < n; i += hop) {
            const double s = traj.grid.nodes[i];
            const double t = traj.grid.nodes[i + stride];
            const double den = (value_at(traj, t) - value_at(traj, s)).norm();
            if (den <= 1e-9 * scale) continue;
            const double num =
                (eval_delay(traj, delay, t) - eval_delay(traj, delay, s)).norm();
            best = std::max(best, num / den);
        }
    }
    return best;
}

inline Eigen::VectorXd initial_weighted_limit(const Trajectory& traj) {
    // Gamma(gamma) times the weighted value at the left endpoint; for a
    // trivial weight this is just the endpoint value.
    return traj.weighted_values.front() / recip_gamma(traj.gamma);
}

// Interior-node defect of the evolution equation. The two modes that are not
// smooth at the left endpoint, the homogeneous part and the response to the
// frozen forcing phi(t0, .), solve the equation exactly and are subtracted in
// closed form before discrete differentiation; what remains is regular enough
// for the difference stencils to converge. Nodes 0, 1, and the last node are
// boundary-affected and excluded from the max.
inline double strong_residual(const Trajectory& traj, const Problem& prob,
                              double ml_tol = 1e-12) {
    prob.validate();
    traj.validate();
    if (traj.dim() != prob.gen.dim())
        throw InvalidParams("defect: trajectory and problem dimensions differ");
    const std::size_t n = traj.grid.nodes.size();
    if (n < 5) throw InvalidParams("defect: need at least 5 nodes");
    const double gamma = prob.gamma();
    const double t0 = traj.grid.t0;

    const Eigen::VectorXd base = initial_weighted_limit(traj);
    const Eigen::VectorXd p0 =
        prob.nonlin.eval(t0, eval_delay(traj, prob.delay, t0));

    MLParams fam;
    fam.alpha = prob.alpha;
    fam.beta = gamma;
    fam.tol = ml_tol;
    MLParams resp;
    resp.alpha = prob.alpha;
    resp.beta = prob.alpha + 1.0;
    resp.tol = ml_tol;

    SampledFn reg;
    reg.grid = traj.grid;
    reg.values.resize(n);
    reg.values[0] = Eigen::VectorXd::Zero(traj.dim());
    std::vector<Eigen::VectorXd> forcing(n);
    forcing[0] = prob.nonlin.eval(t0, eval_delay(traj, prob.delay, t0)) - p0;
    for (std::size_t j = 1; j < n; ++j) {
        const double t = traj.grid.nodes[j];
        const double d = t - t0;
        const Eigen::MatrixXd arg = -prob.gen.A * std::pow(d, prob.alpha);
        const Eigen::VectorXd hom =
            std::pow(d, gamma - 1.0) * (ml_eval_matrix(fam, arg).value * base);
        const Eigen::VectorXd resp_p0 =
            std::pow(d, prob.alpha) * (ml_eval_matrix(resp, arg).value * p0);
        reg.values[j] = traj.value_at(j) - hom - resp_p0;
        forcing[j] = prob.nonlin.eval(t, eval_delay(traj, prob.delay, t)) - p0;
    }

    const SampledFn deriv = hilfer_derivative(reg, prob.alpha, prob.beta);
    double worst = 0.0;
    for (std::size_t j = 2; j + 1 < n; ++j) {
        const double defect =
            (deriv.values[j] + prob.gen.A * reg.values[j] - forcing[j]).norm();
        worst = std::max(worst, defect);
    }
    return worst;
}

inline double initial_condition_residual(const Trajectory& traj,
                                         const Problem& prob) {
    prob.validate();
    traj.validate();
    return (initial_weighted_limit(traj) + prob.nonlocal.eval(traj) - prob.xi0)
        .norm();
}

inline StrongReport verify_strong(const Trajectory& traj, const Problem& prob,
                                  const Certificate& cert,
                                  const std::vector<double>& h_values,
                                  double C_tilde = 1.0) {
    StrongReport rep;
    rep.h_values = h_values;
    rep.c_tilde = C_tilde;
    rep.increments = lipschitz_modulus(traj, h_values);
    for (std::size_t i = 0; i < h_values.size(); ++i)
        rep.lipschitz_modulus =
            std::max(rep.lipschitz_modulus, rep.increments[i] / h_values[i]);
    rep.R_tilde = estimate_R_tilde(traj, prob.delay);
    rep.theta.reserve(h_values.size());
    rep.theta_variant.reserve(h_values.size());
    rep.gronwall_rhs.reserve(h_values.size());
    for (double h : h_values) {
        rep.theta.push_back(gronwall_theta(cert, h));
        rep.theta_variant.push_back(gronwall_theta_variant(cert, h));
        rep.gronwall_rhs.push_back(
            gronwall_bound(cert, rep.R_tilde, C_tilde, h, prob.alpha));
    }
    rep.residual_eq = strong_residual(traj, prob);
    rep.residual_ic = initial_condition_residual(traj, prob);
    return rep;
}

}  // namespace hilfer
