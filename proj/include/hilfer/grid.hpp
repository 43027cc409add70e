#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace hilfer {

/// Strictly increasing time nodes covering [t0, t0 + a]:
/// t0 = nodes[0] < nodes[1] < ... < nodes[N] = t0 + a.
struct Grid {
    double t0 = 0.0;
    double a = 1.0;
    std::vector<double> nodes;

    static Grid uniform(double t0, double a, std::size_t cells) {
        if (!std::isfinite(t0) || !std::isfinite(a) || !(a > 0.0))
            throw InvalidParams("grid: horizon length a must be positive and finite");
        if (cells < 2)
            throw InvalidParams("grid: at least 2 cells are required");
        Grid g;
        g.t0 = t0;
        g.a = a;
        g.nodes.resize(cells + 1);
        for (std::size_t j = 0; j <= cells; ++j)
            g.nodes[j] = t0 + a * (double)j / (double)cells;
        g.nodes.front() = t0;
        g.nodes.back() = t0 + a;
        return g;
    }

    /// Grid over explicitly given nodes; t0 and a are derived.
    static Grid from_nodes(std::vector<double> nodes) {
        Grid g;
        g.nodes = std::move(nodes);
        if (g.nodes.size() < 3)
            throw InvalidParams("grid: at least 3 nodes are required");
        g.t0 = g.nodes.front();
        g.a = g.nodes.back() - g.t0;
        g.validate();
        return g;
    }

    std::size_t cell_count() const { return nodes.size() - 1; }

    void validate() const {
        if (nodes.size() < 3)
            throw InvalidParams("grid: at least 3 nodes are required");
        const double scale = std::max(1.0, std::fabs(t0) + std::fabs(a));
        if (!(a > 0.0) || std::fabs(nodes.front() - t0) > 1e-12 * scale ||
            std::fabs(nodes.back() - (t0 + a)) > 1e-12 * scale)
            throw InvalidParams("grid: nodes must span [t0, t0 + a]");
        for (std::size_t j = 1; j < nodes.size(); ++j) {
            if (!std::isfinite(nodes[j]) || !(nodes[j] > nodes[j - 1]))
                throw InvalidParams("grid: nodes must be finite and strictly increasing");
        }
    }

    /// True when all cells share one width within 1e-12 relative; the common
    /// step is written to *h when given.
    bool is_uniform(double* h = nullptr) const {
        const double step = (nodes.back() - nodes.front()) / (double)cell_count();
        for (std::size_t j = 1; j < nodes.size(); ++j)
            if (std::fabs(nodes[j] - nodes[j - 1] - step) > 1e-12 * std::max(1.0, step))
                return false;
        if (h) *h = step;
        return true;
    }
};

}  // namespace hilfer
