// SPDX-License-Identifier: MIT
#include "roughfunc/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>
#include <stdexcept>

namespace roughfunc {

GaussLegendre::GaussLegendre(std::size_t points) {
    if (points < 1) throw std::invalid_argument("GaussLegendre: need at least one point");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(points), &gsl_integration_glfixed_table_free);
    if (!table) throw std::runtime_error("GaussLegendre: GSL table allocation failed");
    nodes_.resize(points);
    weights_.resize(points);
    for (std::size_t i = 0; i < points; ++i)
        gsl_integration_glfixed_point(-1.0, 1.0, i, &nodes_[i], &weights_[i], table.get());
}

}  // namespace roughfunc
