#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"

namespace hilfer {

/// Increasing time reparameterization psi used by the fractional operators.
/// All quadrature runs in the variable u = psi(t), which absorbs the psi'
/// weight exactly, so the derivative is only exposed for inspection.
struct PsiMap {
    enum class Kind { identity, power, log_shift, tabulated };

    Kind kind = Kind::identity;
    double param = 1.0;           ///< exponent p (power) or shift c (log_shift)
    std::vector<double> tab_t;    ///< tabulated: sample times, strictly increasing
    std::vector<double> tab_v;    ///< tabulated: psi values at tab_t

    static PsiMap identity() { return PsiMap{}; }

    static PsiMap power(double p) {
        if (!(p > 0.0) || !std::isfinite(p))
            throw InvalidParams("psi: power exponent must be positive and finite");
        PsiMap m;
        m.kind = Kind::power;
        m.param = p;
        return m;
    }

    static PsiMap log_shift(double c) {
        if (!(c > 0.0) || !std::isfinite(c))
            throw InvalidParams("psi: log shift must be positive and finite");
        PsiMap m;
        m.kind = Kind::log_shift;
        m.param = c;
        return m;
    }

    static PsiMap tabulated(std::vector<double> t, std::vector<double> v) {
        if (t.size() != v.size() || t.size() < 2)
            throw InvalidParams("psi: table needs matching t/value columns, >= 2 rows");
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!(t[i] > t[i - 1]))
                throw InvalidParams("psi: table times must be strictly increasing");
        PsiMap m;
        m.kind = Kind::tabulated;
        m.tab_t = std::move(t);
        m.tab_v = std::move(v);
        return m;
    }

    double operator()(double t) const {
        switch (kind) {
            case Kind::identity: return t;
            case Kind::power: return std::pow(t, param);
            case Kind::log_shift: return std::log(t + param);
            case Kind::tabulated: {
                const auto [i, w] = locate(t);
                return tab_v[i] + w * (tab_v[i + 1] - tab_v[i]);
            }
        }
        return t;
    }

    double derivative(double t) const {
        switch (kind) {
            case Kind::identity: return 1.0;
            case Kind::power: return param * std::pow(t, param - 1.0);
            case Kind::log_shift: return 1.0 / (t + param);
            case Kind::tabulated: {
                const auto [i, w] = locate(t);
                (void)w;
                return (tab_v[i + 1] - tab_v[i]) / (tab_t[i + 1] - tab_t[i]);
            }
        }
        return 1.0;
    }

    /// Checks that psi is finite and strictly increasing across the grid
    /// nodes; for the tabulated kind also that the grid lies inside the table.
    void validate_on(const Grid& g) const {
        if (kind == Kind::tabulated &&
            (g.nodes.front() < tab_t.front() - 1e-12 ||
             g.nodes.back() > tab_t.back() + 1e-12))
            throw NonMonotonePsi("psi: table does not cover the grid");
        double prev = (*this)(g.nodes.front());
        if (!std::isfinite(prev))
            throw NonMonotonePsi("psi: non-finite value at the left endpoint");
        for (std::size_t j = 1; j < g.nodes.size(); ++j) {
            const double v = (*this)(g.nodes[j]);
            if (!std::isfinite(v) || !(v > prev))
                throw NonMonotonePsi("psi: values must increase strictly along the grid");
            prev = v;
        }
    }

private:
    /// Table cell containing t plus the interpolation weight within it.
    std::pair<std::size_t, double> locate(double t) const {
        const auto it = std::upper_bound(tab_t.begin(), tab_t.end(), t);
        std::size_t i = it == tab_t.begin() ? 0 : (std::size_t)(it - tab_t.begin()) - 1;
        i = std::min(i, tab_t.size() - 2);
        const double w = (t - tab_t[i]) / (tab_t[i + 1] - tab_t[i]);
        return {i, w};
    }
};

}  // namespace hilfer
