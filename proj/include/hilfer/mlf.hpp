#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "gamma.hpp"

namespace hilfer {

/// Controls for truncated two-parameter Mittag-Leffler series evaluation,
/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta).
struct MLParams {
    double alpha;                  ///< first parameter, > 0
    double beta = 1.0;             ///< second parameter, any real
    double tol = 1e-12;            ///< certified absolute truncation tolerance
    std::size_t max_terms = 2000;  ///< series term budget
    double series_radius = 10.0;   ///< reject arguments with |z| beyond this

    void validate() const {
        if (!std::isfinite(alpha) || !(alpha > 0.0))
            throw InvalidParams("mittag-leffler: alpha must be positive and finite");
        if (!std::isfinite(beta))
            throw InvalidParams("mittag-leffler: beta must be finite");
        if (!(tol > 0.0))
            throw InvalidParams("mittag-leffler: tol must be positive");
        if (max_terms < 1)
            throw InvalidParams("mittag-leffler: max_terms must be at least 1");
        if (!(series_radius > 0.0))
            throw InvalidParams("mittag-leffler: series_radius must be positive");
    }
};

template <typename Value>
struct MLResultT {
    Value value;
    double err_bound;        ///< certified truncation bound; <= tol on success
    std::size_t terms_used;
};

using MLResult = MLResultT<double>;
using MLResultC = MLResultT<std::complex<double>>;
using MLResultM = MLResultT<Eigen::MatrixXd>;

namespace detail {

/// Certified geometric bound for the series tail after the k-th term
/// (0-based). Term magnitudes are a_j = mag^j * recip_gamma(alpha j + beta);
/// their ratios a_{j+1}/a_j = mag * Gamma(alpha j + beta)/Gamma(alpha(j+1) + beta)
/// decrease strictly in j once alpha j + beta > 0, because digamma is
/// increasing there. So with r1 = a_{k+1}, rho = a_{k+2}/a_{k+1} < 1, every
/// later ratio is at most rho and the tail is at most r1/(1 - rho).
inline bool ml_tail_bound(double alpha, double beta, double mag,
                          double mag_pow_k1, std::size_t k, double* bound) {
    const double x1 = alpha * (double)(k + 1) + beta;
    const double x2 = alpha * (double)(k + 2) + beta;
    if (x1 <= 0.0 || x2 <= 0.0) return false;  // monotone regime not reached
    const double a1 = mag_pow_k1 * recip_gamma(x1);
    const double a2 = mag_pow_k1 * mag * recip_gamma(x2);
    if (a1 == 0.0) {  // reciprocal Gamma underflow: the tail is below 1e-300
        *bound = 0.0;
        return true;
    }
    const double rho = a2 / a1;
    if (!(rho < 1.0)) return false;
    *bound = a1 / (1.0 - rho);
    return std::isfinite(*bound);
}

inline bool ml_is_finite(double v) { return std::isfinite(v); }
inline bool ml_is_finite(const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <typename Scalar>
MLResultT<Scalar> ml_eval_impl(const MLParams& p, Scalar z) {
    p.validate();
    const double mag = std::abs(z);
    if (!std::isfinite(mag)) throw InvalidParams("mittag-leffler: z must be finite");
    if (mag > p.series_radius)
        throw NonConvergence(
            "mittag-leffler: |z| = " + std::to_string(mag) +
                " exceeds the series radius " + std::to_string(p.series_radius),
            std::numeric_limits<double>::infinity(), 0);
    if (mag == 0.0) return {Scalar(recip_gamma(p.beta)), 0.0, 1};

    Scalar sum{};
    Scalar comp{};         // compensation term; keeps the sum within one ulp
    Scalar power(1.0);     // z^k
    double mag_pow = 1.0;  // |z|^{k+1} after the update below
    double last_bound = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p.max_terms; ++k) {
        const Scalar term = power * recip_gamma(p.alpha * (double)k + p.beta);
        const Scalar y = term - comp;
        const Scalar t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        power *= z;
        mag_pow *= mag;
        double bound;
        if (ml_tail_bound(p.alpha, p.beta, mag, mag_pow, k, &bound)) {
            last_bound = bound;
            if (bound <= p.tol) {
                if (!ml_is_finite(sum))
                    throw NonConvergence("mittag-leffler: series overflowed", bound, k + 1);
                return {sum, bound, k + 1};
            }
        }
    }
    throw NonConvergence(
        "mittag-leffler: term budget exhausted before the tail bound reached tol",
        last_bound, p.max_terms);
}

}  // namespace detail

/// E_{alpha,beta}(z) by truncated power series with a certified tail bound.
inline MLResult ml_eval(const MLParams& p, double z) {
    return detail::ml_eval_impl<double>(p, z);
}

inline MLResultC ml_eval(const MLParams& p, std::complex<double> z) {
    return detail::ml_eval_impl<std::complex<double>>(p, z);
}

/// Matrix argument variant, sum_k M^k / Gamma(alpha k + beta). Direct series
/// in fixed term order; the tail magnitude channel uses the Frobenius norm,
/// which is submultiplicative, so ||M^k||_F <= ||M||_F^k and the scalar
/// geometric tail bound applies verbatim. err_bound is a Frobenius-norm bound
/// on the dropped tail.
inline MLResultM ml_eval_matrix(const MLParams& p, const Eigen::MatrixXd& M) {
    p.validate();
    if (M.rows() != M.cols())
        throw NonSquare("mittag-leffler: matrix argument must be square");
    if (!M.allFinite())
        throw InvalidParams("mittag-leffler: matrix entries must be finite");
    const double mag = M.norm();
    if (mag > p.series_radius)
        throw NonConvergence(
            "mittag-leffler: ||M|| = " + std::to_string(mag) +
                " exceeds the series radius " + std::to_string(p.series_radius),
            std::numeric_limits<double>::infinity(), 0);
    const Eigen::Index d = M.rows();
    if (mag == 0.0)
        return {recip_gamma(p.beta) * Eigen::MatrixXd::Identity(d, d), 0.0, 1};

    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);  // entrywise compensation
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd next(d, d);
    double mag_pow = 1.0;
    double last_bound = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p.max_terms; ++k) {
        const Eigen::MatrixXd term = recip_gamma(p.alpha * (double)k + p.beta) * power;
        const Eigen::MatrixXd y = term - comp;
        const Eigen::MatrixXd t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        next.noalias() = power * M;
        power.swap(next);
        mag_pow *= mag;
        double bound;
        if (detail::ml_tail_bound(p.alpha, p.beta, mag, mag_pow, k, &bound)) {
            last_bound = bound;
            if (bound <= p.tol) {
                if (!sum.allFinite())
                    throw NonConvergence("mittag-leffler: matrix series overflowed",
                                         bound, k + 1);
                return {sum, bound, k + 1};
            }
        }
    }
    throw NonConvergence(
        "mittag-leffler: term budget exhausted before the tail bound reached tol",
        last_bound, p.max_terms);
}

}  // namespace hilfer
