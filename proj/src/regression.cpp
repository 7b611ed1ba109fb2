// SPDX-License-Identifier: MIT
#include "roughfunc/regression.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace roughfunc {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    fit.points = x.size();
    return fit;
}

LineFit fit_log_log(std::span<const double> scales, std::span<const double> values) {
    if (scales.size() != values.size()) throw std::invalid_argument("fit_log_log: size mismatch");
    std::vector<double> lx, ly;
    lx.reserve(scales.size());
    ly.reserve(values.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0) || !(values[i] > 0.0)) throw std::invalid_argument("fit_log_log: non-positive entry");
        lx.push_back(std::log(scales[i]));
        ly.push_back(std::log(values[i]));
    }
    return fit_line(lx, ly);
}

}  // namespace roughfunc
