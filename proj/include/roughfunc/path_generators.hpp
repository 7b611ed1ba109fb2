// SPDX-License-Identifier: MIT
/**
 * Deterministic test-path provisioning.
 *
 *  - smooth_bv:   component c is sin((c+1) t + c/2) + c t^2 / 4 (component 0 is sin t)
 *  - weierstrass: component c is sum_{j=0}^{J} b^{-j alpha} cos(b^j pi t + c pi / 3)
 *  - fbm:         exact Gaussian sampling of fractional Brownian motion by
 *                 circulant embedding of the fractional-Gaussian-noise covariance
 *  - brownian:    fbm with H = 1/2
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "roughfunc/path_model.hpp"

namespace roughfunc {

enum class PathKind { smooth_bv, fbm, weierstrass, brownian };

PathKind parse_path_kind(std::string_view name);
std::string to_string(PathKind kind);

struct GeneratorSpec {
    PathKind kind = PathKind::brownian;
    int dim = 1;
    std::size_t steps = 1024;  ///< N, a power of two
    double horizon = 1.0;
    double alpha = 0.5;        ///< Weierstrass exponent
    double hurst = 0.5;        ///< fBm Hurst index
    double weierstrass_base = 2.0;
    int weierstrass_terms = -1;  ///< -1: floor(log_b N)
    std::uint64_t seed = 0;
};

/// Largest N accepted by the fbm/brownian generator.
inline constexpr std::size_t kMaxGaussianSteps = std::size_t{1} << 14;

SampledPath generate(const GeneratorSpec& spec);

/// Piecewise-linear path with `segments` equal-duration pieces and vertices
/// drawn uniformly from [-spread/2, spread/2]^dim.
SampledPath random_piecewise_linear(std::mt19937_64& rng, int dim, std::size_t segments, double horizon = 1.0,
                                    double spread = 1.0);

/// Nominal Hölder exponent of the generated path (alpha, H, or 1 for smooth paths).
double nominal_exponent(const GeneratorSpec& spec);

}  // namespace roughfunc
