// SPDX-License-Identifier: MIT
/**
 * Uniformly sampled paths, stopped/bumped views, partitions and
 *        Hölder-norm estimation.
 *
 * A SampledPath holds N+1 samples of an R^d-valued path on the grid
 * t_i = i T / N and is read as the continuous piecewise-linear interpolant.
 * Every "alpha-Hölder path" in this library is understood at grid resolution.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace roughfunc {

using Point = std::vector<double>;

class SampledPath {
public:
    /// `samples` is row-major, (steps + 1) rows of `dim` values.
    SampledPath(double horizon, int dim, std::vector<double> samples);

    /// Samples `fn(t_i)` on the uniform grid.
    static SampledPath from_function(double horizon, std::size_t steps, int dim,
                                     const std::function<Point(double)>& fn);

    int dim() const { return dim_; }
    std::size_t steps() const { return steps_; }
    double horizon() const { return horizon_; }
    double step() const { return horizon_ / static_cast<double>(steps_); }
    double time(std::size_t i) const;

    std::span<const double> sample(std::size_t i) const {
        return {samples_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    std::span<const double> raw() const { return samples_; }

    /// Linear interpolation; throws std::out_of_range outside [0, T].
    Point eval(double u) const;
    void eval_into(double u, std::span<double> out) const;

    /// Index i of the grid cell [t_i, t_{i+1}] containing u (the last cell for u = T).
    std::size_t cell_of(double u) const;

    /// Slope of the linear piece on cell i.
    Point slope(std::size_t cell) const;

    /// Exact prefix moment integral_0^u r^m X(r) dr for m in {0, 1}.
    Point moment_integral(double u, int moment) const;

    /// Largest |X(t_i) - Y(t_i)| over grid samples (same grid required).
    double sup_distance(const SampledPath& other) const;

private:
    void require_time(double u, const char* who) const;

    double horizon_;
    int dim_;
    std::size_t steps_;
    std::vector<double> samples_;
    std::vector<double> moment0_;  // prefix integrals at grid points
    std::vector<double> moment1_;
};

/**
 * View of a sampled path stopped at `stop` and shifted by `bump` on [stop, T]:
 *   view(u) = base(u ^ stop) + bump * 1_{[stop, T]}(u).
 * Holds a reference to the base path, which must outlive the view.
 */
class PathView {
public:
    explicit PathView(const SampledPath& base);
    PathView(const SampledPath& base, double stop, Point bump);

    const SampledPath& base() const { return *base_; }
    double stop_time() const { return stop_; }
    const Point& bump() const { return bump_; }
    int dim() const { return base_->dim(); }
    double horizon() const { return base_->horizon(); }

    Point operator()(double u) const;
    void eval_into(double u, std::span<double> out) const;

    /// The causal restriction X_t of this view.
    PathView stopped(double t) const;

    /// integral_0^u r^m view(r) dr for m in {0, 1}.
    Point moment_integral(double u, int moment) const;

private:
    const SampledPath* base_;
    double stop_;
    Point bump_;
};

/// X_t + h 1_{[t,T]}.
PathView stop_and_bump(const SampledPath& p, double t, Point h);

/// Strictly increasing breakpoints s = b_0 < ... < b_m = t.
class Partition {
public:
    explicit Partition(std::vector<double> breakpoints);

    const std::vector<double>& breakpoints() const { return points_; }
    std::size_t cells() const { return points_.size() - 1; }
    double mesh() const;

private:
    std::vector<double> points_;
};

/// 2^level equal subintervals of [s, t].
Partition dyadic_partition(double s, double t, int level);

/// One linear piece of the path restricted to [a, b].
struct PathCell {
    double a;
    double b;
    std::size_t index;
};

/// Grid cells intersecting [s, t], clipped to [s, t]; empty when s == t.
std::vector<PathCell> cells_between(const SampledPath& p, double s, double t);

enum class HolderStrategy { full_pairs, dyadic_pairs };

struct HolderEstimate {
    double alpha = 0.0;
    double value = 0.0;
    std::size_t pairs_evaluated = 0;
    HolderStrategy strategy = HolderStrategy::full_pairs;
};

/// Norm |Xi(t_i, t_j)| of a two-parameter quantity on grid indices i < j.
using IncrementNorm = std::function<double(std::size_t i, std::size_t j)>;

/**
 * sup |Xi(s,t)| / |t-s|^alpha over grid pairs. All pairs are visited when
 * N(N+1)/2 <= pair_budget; otherwise every pair whose span (in steps) is
 * round(2^{j/8}) for some j, adjacent pairs included. OpenMP-parallel.
 */
HolderEstimate holder_norm(std::size_t steps, double horizon, double alpha, std::size_t pair_budget,
                           const IncrementNorm& increment);
HolderEstimate holder_norm(const SampledPath& p, double alpha, std::size_t pair_budget);

/// Euclidean |X(t_j) - X(t_i)|.
double increment_norm(const SampledPath& p, std::size_t i, std::size_t j);

namespace serial {
/// Single-threaded reference for roughfunc::holder_norm.
HolderEstimate holder_norm(std::size_t steps, double horizon, double alpha, std::size_t pair_budget,
                           const IncrementNorm& increment);
HolderEstimate holder_norm(const SampledPath& p, double alpha, std::size_t pair_budget);
}  // namespace serial

/**
 * Piecewise-linear coarsening X^P on [s, t]: equal to p on [0, s] and on
 * [t, T], equal to p at the coarse breakpoints of [s, t] and linear between
 * them. Uses m = ceil((t-s)/mesh_target) equal subintervals, so the mesh lies
 * in [mesh_target/2, mesh_target] whenever mesh_target <= t - s. s, t and
 * the breakpoints are snapped to the sample grid.
 */
SampledPath coarsen_linear(const SampledPath& p, double s, double t, double mesh_target);

/// Same construction with an explicit number of subintervals.
SampledPath coarsen_linear_cells(const SampledPath& p, double s, double t, std::size_t subintervals);

/// Integer mesh-balancing rule m = ceil(|t-s|^{-(n-1) alpha}).
std::size_t balanced_subinterval_count(double length, int n, double alpha);

/// CSV with header `t,x1,...,xd`, 17 significant digits.
void write_path_csv(std::ostream& out, const SampledPath& p);
SampledPath read_path_csv(std::istream& in);

}  // namespace roughfunc
