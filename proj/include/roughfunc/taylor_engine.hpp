// SPDX-License-Identifier: MIT
/**
 * Taylor expansion of causal functionals along sampled paths.
 *
 * taylor_residual evaluates both sides of the exact Taylor identity for a
 * bounded-variation (piecewise-linear) path:
 *
 *   F(t,X) - F(s,X) = sum_{k=0}^{n-1} 1/k! int_s^t <D nabla^k F(u,X), (X(t)-X(u))^{(x)k}> du
 *                   + sum_{k=1}^{n-1} 1/k! <nabla^k F(s,X), (X(t)-X(s))^{(x)k}>
 *                   + 1/(n-1)! int_s^t <nabla^n F(u,X), (X(t)-X(u))^{(x)(n-1)} (x) dX(u)>
 *
 * with every du-integral done by composite Gauss-Legendre on the linear
 * pieces and dX(u) = slope du on each piece.
 *
 * remainder_lhs / scaling_experiment measure the defect of the order-l
 * approximation F(s) + int DF + sum_{k=1}^{l} 1/k! <nabla^k F(s), dX^{(x)k}>
 * and fit its decay in |t-s|.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "roughfunc/functional.hpp"
#include "roughfunc/path_model.hpp"

namespace roughfunc {

inline constexpr std::size_t kDefaultQuadraturePoints = 16;
inline constexpr double kSlopeTolerance = 0.15;

struct TaylorReport {
    double s = 0.0;
    double t = 0.0;
    int n = 1;
    double lhs = 0.0;
    std::vector<double> time_terms;   ///< index k = 0..n-1
    std::vector<double> space_terms;  ///< index k = 0..n-1 (entry 0 unused, always 0)
    double remainder = 0.0;
    double residual = 0.0;
    std::size_t quadrature_points = 0;

    double rhs() const;
};

TaylorReport taylor_residual(const CausalFunctional& F, const SampledPath& p, double s, double t, int n,
                             std::size_t quad = 64);

/// |F(t,X) - F(s,X) - int_s^t DF du - sum_{k=1}^{l} 1/k! <nabla^k F(s,X), (X(t)-X(s))^{(x)k}>|.
double remainder_lhs(const CausalFunctional& F, const SampledPath& p, double s, double t, int l,
                     std::size_t quad = kDefaultQuadraturePoints);

/// min(alpha + (n-1) alpha^2, 1 + alpha, (l+1) alpha).
double predicted_remainder_exponent(double alpha, int n, int l);

/// Lengths 2^-from, ..., 2^-to.
std::vector<double> geometric_ladder(int from_exponent, int to_exponent);

struct ScalingReport {
    double alpha = 0.0;
    int n = 1;
    int l = 0;
    std::vector<double> lengths;
    std::vector<double> max_defects;
    double predicted_exponent = 0.0;
    double fitted_slope = 0.0;  ///< NaN when degenerate
    std::size_t fitted_points = 0;
    bool degenerate = false;    ///< fewer than two defects above the round-off guard
    bool pass = false;
};

struct ScalingOptions {
    std::size_t anchors = 128;  ///< one per stratum of [0, 1)
    std::uint64_t seed = 0;
    std::size_t quadrature = kDefaultQuadraturePoints;
};

/// For each length, max over stratified random anchors s of remainder_lhs(s, s + length);
/// OpenMP-parallel over (length, anchor) cells; identical to the serial result.
ScalingReport scaling_experiment(const CausalFunctional& F, const SampledPath& p, double alpha, int n, int l,
                                 const std::vector<double>& ladder, const ScalingOptions& options = {});

namespace serial {
ScalingReport scaling_experiment(const CausalFunctional& F, const SampledPath& p, double alpha, int n, int l,
                                 const std::vector<double>& ladder, const ScalingOptions& options = {});
}  // namespace serial

/// Smallest n >= 1 with 2 alpha + (n-1) alpha^2 > 1.
int choose_n(double alpha);

/// Smallest n >= 1 with alpha + (n-1) alpha^2 > 1.
int choose_n_tilde(double alpha);

}  // namespace roughfunc
