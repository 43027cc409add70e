#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "grid.hpp"

namespace hilfer {

/// Vector-valued function sampled at every grid node.
struct SampledFn {
    Grid grid;
    std::vector<Eigen::VectorXd> values;

    Eigen::Index dim() const { return values.empty() ? 0 : values.front().size(); }

    void validate() const {
        grid.validate();
        if (values.size() != grid.nodes.size())
            throw InvalidParams("sampled function: one value per grid node required");
        const Eigen::Index d = dim();
        if (d < 1)
            throw InvalidParams("sampled function: dimension must be at least 1");
        for (const auto& v : values)
            if (v.size() != d || !v.allFinite())
                throw InvalidParams("sampled function: values must be finite, equal dimension");
    }

    static SampledFn from_scalar(const Grid& g, const std::function<double(double)>& f) {
        SampledFn s;
        s.grid = g;
        s.values.reserve(g.nodes.size());
        for (double t : g.nodes) {
            Eigen::VectorXd v(1);
            v(0) = f(t);
            s.values.push_back(std::move(v));
        }
        return s;
    }

    static SampledFn from_vector(const Grid& g,
                                 const std::function<Eigen::VectorXd(double)>& f) {
        SampledFn s;
        s.grid = g;
        s.values.reserve(g.nodes.size());
        for (double t : g.nodes) s.values.push_back(f(t));
        return s;
    }
};

namespace detail {

/// Linear interpolation of the samples at t, clamped to the sample range.
inline Eigen::VectorXd interp_samples(const SampledFn& f, double t) {
    const auto& nodes = f.grid.nodes;
    const double tc = std::clamp(t, nodes.front(), nodes.back());
    auto it = std::upper_bound(nodes.begin(), nodes.end(), tc);
    std::size_t hi = std::min<std::size_t>(
        std::max<std::ptrdiff_t>(it - nodes.begin(), 1), nodes.size() - 1);
    const std::size_t lo = hi - 1;
    const double theta = (tc - nodes[lo]) / (nodes[hi] - nodes[lo]);
    return (1.0 - theta) * f.values[lo] + theta * f.values[hi];
}

}  // namespace detail

}  // namespace hilfer
