// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "roughfunc/path_model.hpp"

namespace roughfunc {

/// Fixed-order Gauss-Legendre rule (nodes from GSL's glfixed tables).
class GaussLegendre {
public:
    explicit GaussLegendre(std::size_t points);

    std::size_t points() const { return nodes_.size(); }
    std::span<const double> nodes() const { return nodes_; }      ///< on [-1, 1]
    std::span<const double> weights() const { return weights_; }

    template <class Fn>
    double integrate(double a, double b, Fn&& fn) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * fn(mid + half * nodes_[i]);
        return half * acc;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Composite rule over the linear pieces of `p` inside [s, t].
/// `fn(u, cell)` receives the node and the grid cell it lies in.
template <class Fn>
double integrate_over_cells(const SampledPath& p, double s, double t, const GaussLegendre& rule, Fn&& fn) {
    double acc = 0.0;
    for (const PathCell& cell : cells_between(p, s, t))
        acc += rule.integrate(cell.a, cell.b, [&](double u) { return fn(u, cell); });
    return acc;
}

}  // namespace roughfunc
