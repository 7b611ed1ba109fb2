// SPDX-License-Identifier: MIT
/**
 * Signatures of piecewise-linear paths and the reduced (symmetric) lift.
 *
 * path_signature multiplies tensor exponentials of the linear pieces with
 * the concatenation product, which is exact for piecewise-linear input.
 * brute_force_signature is an independent iterated-sum oracle.
 */
#pragma once

#include <span>
#include <vector>

#include "roughfunc/path_model.hpp"
#include "roughfunc/tensor_algebra.hpp"

namespace roughfunc {

inline constexpr int kMaxSignatureDepth = 6;
inline constexpr int kMaxBruteForceWord = 4;

/// Tensor exponential of a single linear segment: level k is delta^{(x)k} / k!.
TruncatedSeries segment_signature(std::span<const double> delta, int depth);

/// Truncated signature S_{s,t} of the piecewise-linear path p.
TruncatedSeries path_signature(const SampledPath& p, double s, double t, int depth);

/// Left-point nested Riemann sum for <S_{s,t}, e_w> with `subdivisions`
/// equal steps; converges at rate O(1/subdivisions).
double brute_force_signature(const SampledPath& p, double s, double t, const Word& word, std::size_t subdivisions);

/// Reduced lift X^k_{s,t} = (X(t) - X(s))^{(x)k} / k!, k = 0..depth.
struct ReducedLift {
    int dim = 1;
    int depth = 0;
    double s = 0.0;
    double t = 0.0;
    std::vector<LevelTensor> levels;

    const LevelTensor& level(int k) const { return levels.at(static_cast<std::size_t>(k)); }
};

ReducedLift reduced_lift(const SampledPath& p, double s, double t, int depth);
ReducedLift reduced_lift_from_increment(std::span<const double> delta, double s, double t, int depth);

/// max_k |X^k_{s,t} - sym(sum_j X^j_{s,u} (x) X^{k-j}_{u,t})|.
double check_reduced_chen(const ReducedLift& whole, const ReducedLift& left, const ReducedLift& right);
double check_reduced_chen(const SampledPath& p, double s, double u, double t, int depth);

}  // namespace roughfunc
