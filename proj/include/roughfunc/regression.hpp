// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>

namespace roughfunc {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope x; needs >= 2 distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(values) against log(scales).
LineFit fit_log_log(std::span<const double> scales, std::span<const double> values);

}  // namespace roughfunc
