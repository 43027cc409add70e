// Problem data for the semilinear nonlocal evolution equation: generator,
// orders, horizon, initial datum, nonlinearity phi(t, u), delay sigma(t), and
// the nonlocal initial form Phi(xi) = sum_k c_k xi(t_k). The catalog kinds
// carry their Lipschitz data in closed form; the certifier reads them.
#pragma once

#include <hilfer/errors.hpp>
#include <hilfer/operator_families.hpp>
#include <hilfer/sampled_fn.hpp>
#include <hilfer/trajectory.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace hilfer {

struct NonlinSpec {
    enum class Kind { zero, linear, sine, polynomial, tabulated };

    Kind kind = Kind::zero;
    Eigen::MatrixXd L;            // linear: phi(t, u) = L u
    double kappa = 0.0;           // sine: phi(t, u) = kappa sin(u) componentwise
    std::vector<double> coeffs;   // polynomial in u, ascending powers, componentwise
    SampledFn table;              // tabulated: state-independent forcing g(t)

    static NonlinSpec zero() { return NonlinSpec{}; }

    static NonlinSpec linear(Eigen::MatrixXd mat) {
        if (mat.rows() == 0 || mat.rows() != mat.cols())
            throw NonSquare("nonlinearity: linear coefficient must be square");
        if (!mat.allFinite())
            throw InvalidParams("nonlinearity: linear coefficient has non-finite entries");
        NonlinSpec s;
        s.kind = Kind::linear;
        s.L = std::move(mat);
        return s;
    }

    static NonlinSpec sine(double kappa) {
        if (!std::isfinite(kappa) || kappa < 0.0)
            throw InvalidParams("nonlinearity: sine scale must be finite and >= 0");
        NonlinSpec s;
        s.kind = Kind::sine;
        s.kappa = kappa;
        return s;
    }

    static NonlinSpec polynomial(std::vector<double> coeffs) {
        if (coeffs.empty())
            throw InvalidParams("nonlinearity: polynomial needs at least one coefficient");
        for (double c : coeffs)
            if (!std::isfinite(c))
                throw InvalidParams("nonlinearity: non-finite polynomial coefficient");
        NonlinSpec s;
        s.kind = Kind::polynomial;
        s.coeffs = std::move(coeffs);
        return s;
    }

    static NonlinSpec tabulated(SampledFn table) {
        table.validate();
        NonlinSpec s;
        s.kind = Kind::tabulated;
        s.table = std::move(table);
        return s;
    }

    bool depends_on_state() const {
        return kind == Kind::linear || kind == Kind::sine || kind == Kind::polynomial;
    }

    Eigen::VectorXd eval(double t, const Eigen::VectorXd& u) const {
        switch (kind) {
            case Kind::zero:
                return Eigen::VectorXd::Zero(u.size());
            case Kind::linear:
                if (L.cols() != u.size())
                    throw InvalidParams("nonlinearity: state dimension mismatch");
                return L * u;
            case Kind::sine:
                return kappa * u.array().sin().matrix();
            case Kind::polynomial: {
                Eigen::VectorXd out(u.size());
                for (Eigen::Index i = 0; i < u.size(); ++i) {
                    double acc = 0.0;
                    for (std::size_t k = coeffs.size(); k-- > 0;)
                        acc = acc * u(i) + coeffs[k];
                    out(i) = acc;
                }
                return out;
            }
            case Kind::tabulated:
                return detail::interp_samples(table, t);
        }
        throw InvalidParams("nonlinearity: unknown kind");
    }
};

struct DelaySpec {
    enum class Kind { identity, proportional, lag, tabulated };

    Kind kind = Kind::identity;
    double q = 1.0;    // proportional: sigma(t) = t0 + q (t - t0)
    double tau = 0.0;  // lag: sigma(t) = max(t0, t - tau)
    std::vector<double> ts, sigmas;  // tabulated, linear between nodes

    static DelaySpec identity() { return DelaySpec{}; }

    static DelaySpec proportional(double q) {
        if (!std::isfinite(q) || !(q > 0.0) || !(q <= 1.0))
            throw InvalidParams("delay: proportional factor must lie in (0, 1]");
        DelaySpec s;
        s.kind = Kind::proportional;
        s.q = q;
        return s;
    }

    static DelaySpec lag(double tau) {
        if (!std::isfinite(tau) || tau < 0.0)
            throw InvalidParams("delay: lag must be finite and >= 0");
        DelaySpec s;
        s.kind = Kind::lag;
        s.tau = tau;
        return s;
    }

    static DelaySpec tabulated(std::vector<double> ts, std::vector<double> sigmas) {
        if (ts.size() < 2 || ts.size() != sigmas.size())
            throw InvalidParams("delay: table needs >= 2 aligned (t, sigma) pairs");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (!std::isfinite(ts[i]) || !std::isfinite(sigmas[i]))
                throw InvalidParams("delay: non-finite table entry");
            if (i > 0 && !(ts[i] > ts[i - 1]))
                throw InvalidParams("delay: table times must increase strictly");
        }
        DelaySpec s;
        s.kind = Kind::tabulated;
        s.ts = std::move(ts);
        s.sigmas = std::move(sigmas);
        return s;
    }

    double sigma(double t, double t0) const {
        switch (kind) {
            case Kind::identity:
                return t;
            case Kind::proportional:
                return t0 + q * (t - t0);
            case Kind::lag:
                return std::max(t0, t - tau);
            case Kind::tabulated: {
                const double tc = std::clamp(t, ts.front(), ts.back());
                auto it = std::upper_bound(ts.begin(), ts.end(), tc);
                std::size_t hi = std::min<std::size_t>(
                    std::max<std::ptrdiff_t>(it - ts.begin(), 1), ts.size() - 1);
                const std::size_t lo = hi - 1;
                const double theta = (tc - ts[lo]) / (ts[hi] - ts[lo]);
                return (1.0 - theta) * sigmas[lo] + theta * sigmas[hi];
            }
        }
        throw InvalidParams("delay: unknown kind");
    }

    // Exact lower bound on sigma' for every catalog kind (the table is
    // piecewise linear, so its minimum slope is exact). A positive lag clamps
    // sigma flat near t0, so its true bound is 0.
    double derivative_bound() const {
        switch (kind) {
            case Kind::identity:
                return 1.0;
            case Kind::proportional:
                return q;
            case Kind::lag:
                return tau > 0.0 ? 0.0 : 1.0;
            case Kind::tabulated: {
                double b = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i + 1 < ts.size(); ++i)
                    b = std::min(b, (sigmas[i + 1] - sigmas[i]) / (ts[i + 1] - ts[i]));
                return b;
            }
        }
        throw InvalidParams("delay: unknown kind");
    }
};

struct NonlocalSpec {
    std::vector<double> anchors;
    std::vector<Eigen::MatrixXd> coefficients;

    static NonlocalSpec none() { return NonlocalSpec{}; }

    static NonlocalSpec of(std::vector<double> anchors,
                           std::vector<Eigen::MatrixXd> coefficients) {
        if (anchors.size() != coefficients.size())
            throw InvalidParams("nonlocal: one coefficient per anchor required");
        NonlocalSpec s;
        s.anchors = std::move(anchors);
        s.coefficients = std::move(coefficients);
        return s;
    }

    bool empty() const { return anchors.empty(); }

    Eigen::VectorXd eval(const Trajectory& traj) const {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(traj.dim());
        for (std::size_t k = 0; k < anchors.size(); ++k)
            acc.noalias() += coefficients[k] * value_at(traj, anchors[k]);
        return acc;
    }
};

struct Problem {
    Generator gen;
    double alpha = 0.5;
    double beta = 1.0;
    double t0 = 0.0;
    double a = 1.0;
    Eigen::VectorXd xi0;
    NonlinSpec nonlin;
    DelaySpec delay;
    NonlocalSpec nonlocal;
    double ball_radius = 1.0;

    double gamma() const { return hilfer_gamma(alpha, beta); }

    void validate() const {
        gen.validate();
        detail::check_family_orders(alpha, beta);
        if (!std::isfinite(t0)) throw InvalidParams("problem: t0 must be finite");
        if (!std::isfinite(a) || !(a > 0.0))
            throw InvalidParams("problem: horizon length must be positive");
        if (xi0.size() != gen.dim())
            throw InvalidParams("problem: xi0 dimension must match the generator");
        if (!xi0.allFinite()) throw InvalidParams("problem: xi0 has non-finite entries");
        if (!std::isfinite(ball_radius) || !(ball_radius > 0.0))
            throw InvalidParams("problem: ball radius must be positive");

        // The delay must map the horizon into itself; checked on a dense sample.
        const double eps = 1e-9 * std::max(1.0, std::fabs(t0) + a);
        for (int i = 0; i <= 256; ++i) {
            const double t = t0 + a * static_cast<double>(i) / 256.0;
            const double s = delay.sigma(t, t0);
            if (!(s >= t0 - eps) || !(s <= t0 + a + eps))
                throw InvalidParams("problem: delay must map the horizon into itself");
        }

        double prev = t0;
        for (double tk : nonlocal.anchors) {
            if (!(tk > prev) || !(tk <= t0 + a + eps))
                throw InvalidParams(
                    "problem: nonlocal anchors must increase strictly inside the horizon");
            prev = tk;
        }
        for (const auto& c : nonlocal.coefficients) {
            if (c.rows() != gen.dim() || c.cols() != gen.dim())
                throw InvalidParams("problem: nonlocal coefficient shape mismatch");
            if (!c.allFinite())
                throw InvalidParams("problem: nonlocal coefficient has non-finite entries");
        }

        if (nonlin.kind == NonlinSpec::Kind::linear && nonlin.L.rows() != gen.dim())
            throw InvalidParams("problem: nonlinearity dimension must match the generator");
        if (nonlin.kind == NonlinSpec::Kind::tabulated) {
            if (nonlin.table.dim() != gen.dim())
                throw InvalidParams("problem: forcing table dimension must match the generator");
            if (nonlin.table.grid.nodes.front() > t0 + eps ||
                nonlin.table.grid.nodes.back() < t0 + a - eps)
                throw InvalidParams("problem: forcing table must cover the horizon");
        }
    }
};

// xi(sigma(s)) for the delayed nonlinearity: the delayed time is located in
// the trajectory's grid and the weighted values are interpolated linearly,
// then unweighted. When sigma(s) hits t0 with gamma < 1 the finite
// initial-condition representative is used (see value_at).
inline Eigen::VectorXd eval_delay(const Trajectory& traj, const DelaySpec& delay,
                                  double s) {
    const double t0 = traj.grid.t0;
    const double end = traj.grid.nodes.back();
    const double eps = 1e-9 * std::max(1.0, std::fabs(t0) + std::fabs(end));
    const double sd = delay.sigma(s, t0);
    if (!(sd >= t0 - eps) || !(sd <= end + eps))
        throw DelayOutOfRange("delayed time falls outside the trajectory horizon");
    return value_at(traj, std::clamp(sd, t0, end));
}

}  // namespace hilfer
