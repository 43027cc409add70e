#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "gamma.hpp"
#include "grid.hpp"
#include "psi_map.hpp"
#include "sampled_fn.hpp"

namespace hilfer {

namespace detail {

/// w0^mu - w1^mu for 0 <= w1 <= w0, stable when w1/w0 is close to one.
inline double power_diff(double w0, double w1, double mu) {
    if (w1 <= 0.0) return std::pow(w0, mu);
    return -std::pow(w0, mu) * std::expm1(mu * std::log1p((w1 - w0) / w0));
}

/// Nonuniform finite differences of g with respect to u: three-point central
/// at interior nodes from the second one on, two-point one-sided at the right
/// end. The first two nodes never reference g[0]: a fractional integral is 0
/// at the left endpoint by definition, but for integrands unbounded there its
/// t -> t0 limit need not be 0, and differencing across that jump would put a
/// 1/h spike into the outer convolution. Nodes 0 and 1 share the right-sided
/// difference and are boundary-affected.
inline std::vector<Eigen::VectorXd> diff_nonuniform(
    const std::vector<Eigen::VectorXd>& g, const std::vector<double>& u) {
    const std::size_t n = g.size();
    std::vector<Eigen::VectorXd> d(n);
    d[1] = (g[2] - g[1]) / (u[2] - u[1]);
    d[0] = d[1];
    d[n - 1] = (g[n - 1] - g[n - 2]) / (u[n - 1] - u[n - 2]);
    for (std::size_t j = 2; j + 1 < n; ++j) {
        const double hm = u[j] - u[j - 1];
        const double hp = u[j + 1] - u[j];
        d[j] = (hm * hm * g[j + 1] + (hp * hp - hm * hm) * g[j] - hp * hp * g[j - 1]) /
               (hm * hp * (hm + hp));
    }
    return d;
}

}  // namespace detail

/// Fractional integral of order mu with respect to psi:
///   (1/Gamma(mu)) int_{t0}^{tau_j} (psi(tau_j) - psi(s))^{mu-1} psi'(s) f(s) ds
/// at every node. Substituting u = psi(s) turns this into a plain
/// convolution against (U - u)^{mu-1} in u; the quadrature interpolates f
/// piecewise-linearly in u and integrates each cell against the exact kernel
/// moments, so it is exact whenever f is piecewise linear in u. The value at
/// the first node is 0. Summation runs left to right for determinism.
inline SampledFn rl_integral(const SampledFn& f, double mu,
                             const PsiMap& psi = PsiMap::identity()) {
    if (!std::isfinite(mu) || !(mu > 0.0))
        throw InvalidOrder("fractional integral: order mu must be positive");
    f.validate();
    psi.validate_on(f.grid);

    const std::size_t n = f.grid.nodes.size();
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = psi(f.grid.nodes[j]);

    const double rg = recip_gamma(mu);
    SampledFn out;
    out.grid = f.grid;
    out.values.assign(n, Eigen::VectorXd::Zero(f.dim()));
    for (std::size_t j = 1; j < n; ++j) {
        const double U = u[j];
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(f.dim());
        for (std::size_t i = 0; i < j; ++i) {
            const double w0 = U - u[i];
            const double w1 = U - u[i + 1];
            const double h = u[i + 1] - u[i];
            const double m0 = detail::power_diff(w0, w1, mu) / mu;
            const double m1 = detail::power_diff(w0, w1, mu + 1.0) / (mu + 1.0);
            acc += ((m1 - w1 * m0) / h) * f.values[i] +
                   ((w0 * m0 - m1) / h) * f.values[i + 1];
        }
        out.values[j] = rg * acc;
    }
    return out;
}

/// Discrete fractional derivative of order alpha, type beta, with respect to
/// psi: the composition
///   I^{beta(1-alpha)} ( (1/psi') d/dt ) I^{(1-beta)(1-alpha)} f,
/// realized as integral -> nonuniform difference in u = psi(t) -> integral.
/// (d/du = (1/psi') d/dt, so the middle factor is a plain derivative in u.)
/// Zero-order integrals are skipped exactly: beta = 1 gives the Caputo-type
/// composition, beta = 0 the Riemann-Liouville-type one, and alpha = 1 an
/// ordinary derivative. The first and last nodes use one-sided differences
/// and are boundary-affected; residual norms exclude them.
inline SampledFn hilfer_derivative(const SampledFn& f, double alpha, double beta,
                                   const PsiMap& psi = PsiMap::identity()) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha <= 1.0))
        throw InvalidOrder("fractional derivative: alpha must lie in (0, 1]");
    if (!std::isfinite(beta) || !(beta >= 0.0) || !(beta <= 1.0))
        throw InvalidOrder("fractional derivative: beta must lie in [0, 1]");
    f.validate();
    psi.validate_on(f.grid);

    const double mu_inner = (1.0 - beta) * (1.0 - alpha);
    const double mu_outer = beta * (1.0 - alpha);

    const SampledFn* inner = &f;
    SampledFn inner_store;
    if (mu_inner > 0.0) {
        inner_store = rl_integral(f, mu_inner, psi);
        inner = &inner_store;
    }

    const std::size_t n = f.grid.nodes.size();
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = psi(f.grid.nodes[j]);

    SampledFn diff;
    diff.grid = f.grid;
    diff.values = detail::diff_nonuniform(inner->values, u);
    if (mu_outer > 0.0) return rl_integral(diff, mu_outer, psi);
    return diff;
}

}  // namespace hilfer
