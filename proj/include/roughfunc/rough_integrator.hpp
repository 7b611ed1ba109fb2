// SPDX-License-Identifier: MIT
/**
 * Compensated Riemann sums and the rough functional Itô formula.
 *
 *   Xi_{s,t}      = sum_{k=1}^{n} <nabla^k F(s,X), X^k_{s,t}>
 *   R^{X,k}_{s,t} = nabla^k F(t,X) - sum_{l=k}^{n} <nabla^l F(s,X), X^{l-k}_{s,t}>
 *
 * with X^k the reduced lift. For s <= u <= t the two are tied by the exact
 * algebraic identity
 *
 *   Xi_{s,t} - Xi_{s,u} - Xi_{u,t} = - sum_{k=1}^{n} <R^{X,k}_{s,u}, X^k_{u,t}>,
 *
 * and the rough integral is the limit of sum_{[s,t] in P} Xi_{s,t} over
 * dyadic refinements aligned to the sample grid.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "roughfunc/functional.hpp"
#include "roughfunc/path_model.hpp"
#include "roughfunc/tensor_algebra.hpp"

namespace roughfunc {

struct CompensatedIncrement {
    double s = 0.0;
    double t = 0.0;
    int n = 1;
    double value = 0.0;
};

CompensatedIncrement xi(const CausalFunctional& F, const SampledPath& p, int n, double s, double t);

/// R^{X,k}_{s,t}, an order-k tensor; 1 <= k <= n.
LevelTensor controlled_remainder(const CausalFunctional& F, const SampledPath& p, int n, int k, double s, double t);

/// |(Xi_{s,t} - Xi_{s,u} - Xi_{u,t}) + sum_k <R^{X,k}_{s,u}, X^k_{u,t}>|, both sides evaluated independently.
double coherence_defect(const CausalFunctional& F, const SampledPath& p, int n, double s, double u, double t);

/// Sum of Xi over the cells of `partition` (OpenMP over cells, pairwise reduction).
double compensated_sum(const CausalFunctional& F, const SampledPath& p, int n, const Partition& partition);

/// Pairwise (tree) summation; the grouping depends only on values.size().
double pairwise_sum(const std::vector<double>& values);

namespace serial {
/// Single-threaded left-to-right reference for roughfunc::compensated_sum.
double compensated_sum(const CausalFunctional& F, const SampledPath& p, int n, const Partition& partition);
}  // namespace serial

/// theta = 2 alpha + (n-1) alpha^2, the sewing exponent of the local defect.
double sewing_exponent(double alpha, int n);

struct IntegralResult {
    double value = 0.0;                  ///< compensated sum at the deepest level
    std::vector<double> dyadic_trace;    ///< level m = 0..M
    std::vector<double> successive_diffs;  ///< |trace[m+1] - trace[m]|, m = 0..M-1
    double fitted_rate = 0.0;            ///< -slope of log2 diff against m; NaN if undefined
    bool non_convergent = false;         ///< last three diffs non-decreasing and above round-off
    std::optional<double> extrapolated;  ///< Richardson value, only when requested
};

struct RoughIntegralOptions {
    bool richardson = false;
};

/// Dyadic refinement on [0, T] up to level M <= log2(N) - 2.
IntegralResult rough_integral(const CausalFunctional& F, const SampledPath& p, int n, int max_level,
                              const RoughIntegralOptions& options = {});

/// Largest admissible refinement level for a path with N steps.
int max_dyadic_level(const SampledPath& p);

struct RemainderFit {
    int k = 1;
    int n = 1;
    double alpha = 0.0;
    double predicted_exponent = 0.0;  ///< alpha + (n-k) alpha^2
    HolderEstimate holder;            ///< sup |R^{X,k}| / |t-s|^predicted over the evaluated pairs
    std::vector<double> scales;
    std::vector<double> sup_values;
    double fitted_exponent = 0.0;     ///< NaN when degenerate
    bool degenerate = false;
    bool pass = false;
};

/// Hölder fit of R^{X,k} over dyadic scales from 4 grid steps up to T/4.
RemainderFit remainder_holder_fit(const CausalFunctional& F, const SampledPath& p, double alpha, int n, int k,
                                  std::size_t pair_budget);

struct ItoReport {
    double lhs = 0.0;             ///< F(T,X) - F(0,X)
    double time_integral = 0.0;   ///< int_0^T DF(u,X) du
    IntegralResult integral;
    double residual = 0.0;
    double last_diff = 0.0;
    bool order_warning = false;   ///< F has fewer than n_check space derivatives
};

ItoReport ito_residual(const CausalFunctional& F, const SampledPath& p, int n, int n_check, int max_level,
                       std::size_t quad = 16);

}  // namespace roughfunc
