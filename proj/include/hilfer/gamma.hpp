#pragma once

#include <cmath>
#include <limits>

namespace hilfer {

namespace detail {

inline constexpr long double kPiL = 3.14159265358979323846264338327950288L;
inline constexpr long double kHalfLogTwoPiL = 0.918938533204672741780329736405617639L;

/// log Gamma(x) for x >= 0.5, evaluated in long double.
///
/// Lanczos (g = 7, 9 coefficients) on [0.5, 10). That coefficient set alone
/// drifts to ~2e-13 relative error in 1/Gamma beyond x ~ 140, so for x >= 10
/// the Stirling asymptotic series takes over (Bernoulli terms through B14,
/// truncation below 1e-16 there). Combined with the single final rounding in
/// recip_gamma this keeps the reciprocal accurate to ~2e-15 everywhere.
inline long double log_gamma_pos(long double x) {
    if (x >= 10.0L) {
        const long double inv = 1.0L / x;
        const long double inv2 = inv * inv;
        // B_{2n} / (2n (2n-1)) for n = 1..7
        constexpr long double b[7] = {
            1.0L / 12.0L,   -1.0L / 360.0L,      1.0L / 1260.0L, -1.0L / 1680.0L,
            1.0L / 1188.0L, -691.0L / 360360.0L, 7.0L / 1092.0L};
        long double s = 0.0L, p = inv;
        for (int n = 0; n < 7; ++n) {
            s += b[n] * p;
            p *= inv2;
        }
        return (x - 0.5L) * std::log(x) - x + kHalfLogTwoPiL + s;
    }
    constexpr long double c[9] = {
        0.99999999999980993L,     676.5203681218851L,      -1259.1392167224028L,
        771.32342877765313L,      -176.61502916214059L,    12.507343278686905L,
        -0.13857109526572012L,    9.9843695780195716e-6L,  1.5056327351493116e-7L};
    const long double z = x - 1.0L;
    long double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const long double t = z + 7.5L;
    return kHalfLogTwoPiL + (z + 0.5L) * std::log(t) - t + std::log(a);
}

/// sin(pi x) with argument reduction done on x, not on pi*x.
inline long double sin_pi(long double x) {
    const long double n = std::round(x);
    const long double f = x - n;    // in [-1/2, 1/2], exactly representable
    const long double s = std::sin(kPiL * f);
    return std::fmod(n, 2.0L) == 0.0L ? s : -s;
}

}  // namespace detail

/// 1/Gamma(x) as an entire function: 0 at the poles x = 0, -1, -2, ...
///
/// Positive integer arguments go through an exact factorial product, so
/// recip_gamma(1) == 1.0 and friends hold bit-exactly; several certification
/// identities rely on that. Everything else is evaluated in long double and
/// rounded once. Relative error is below 1e-14 wherever the result is normal.
inline double recip_gamma(double x) {
    if (x == std::floor(x)) {
        if (x <= 0.0) return 0.0;    // poles of Gamma
        if (x > 1755.0) return 0.0;  // 1/(x-1)! underflows long before this
        long double f = 1.0L;
        for (long double k = 2.0L; k < (long double)x; k += 1.0L) f *= k;
        return (double)(1.0L / f);
    }
    if (!std::isfinite(x)) return x > 0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    if (x >= 0.5) return (double)std::exp(-detail::log_gamma_pos((long double)x));
    // reflection: 1/Gamma(x) = sin(pi x)/pi * Gamma(1-x)
    const long double s = detail::sin_pi((long double)x);
    return (double)(s / detail::kPiL * std::exp(detail::log_gamma_pos(1.0L - (long double)x)));
}

}  // namespace hilfer
