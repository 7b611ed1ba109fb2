// SPDX-License-Identifier: MIT
#include "roughfunc/rough_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "roughfunc/quadrature.hpp"
#include "roughfunc/regression.hpp"
#include "roughfunc/signature.hpp"

namespace roughfunc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_derivatives(const CausalFunctional& F, int n, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
    if (F.max_space_order() < n)
        throw std::invalid_argument(std::string(who) + ": functional provides only " +
                                    std::to_string(F.max_space_order()) + " space derivatives, need " +
                                    std::to_string(n));
}

void check_interval(const SampledPath& p, double s, double t, const char* who) {
    if (!(s >= 0.0 && s <= t && t <= p.horizon())) throw std::invalid_argument(std::string(who) + ": invalid interval");
}

ReducedLift lift_between(const SampledPath& p, double s, double t, int depth) {
    const Point a = p.eval(s);
    Point delta = p.eval(t);
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] -= a[i];
    return reduced_lift_from_increment(delta, s, t, depth);
}

double xi_value(const CausalFunctional& F, const SampledPath& p, int n, double s, double t) {
    const PathView x(p);
    const ReducedLift lift = lift_between(p, s, t, n);
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += inner_product(F.space_derivative(k, s, x), lift.level(k));
    return acc;
}

}  // namespace

CompensatedIncrement xi(const CausalFunctional& F, const SampledPath& p, int n, double s, double t) {
    require_derivatives(F, n, "xi");
    check_interval(p, s, t, "xi");
    return {s, t, n, xi_value(F, p, n, s, t)};
}

LevelTensor controlled_remainder(const CausalFunctional& F, const SampledPath& p, int n, int k, double s, double t) {
    require_derivatives(F, n, "controlled_remainder");
    if (k < 1 || k > n) throw std::invalid_argument("controlled_remainder: need 1 <= k <= n");
    check_interval(p, s, t, "controlled_remainder");
    const PathView x(p);
    const ReducedLift lift = lift_between(p, s, t, n - k);
    LevelTensor out = F.space_derivative(k, t, x);
    for (int l = k; l <= n; ++l) out -= contract(F.space_derivative(l, s, x), lift.level(l - k));
    return out;
}

double coherence_defect(const CausalFunctional& F, const SampledPath& p, int n, double s, double u, double t) {
    require_derivatives(F, n, "coherence_defect");
    if (!(s <= u && u <= t)) throw std::invalid_argument("coherence_defect: need s <= u <= t");
    check_interval(p, s, t, "coherence_defect");
    const double lhs = xi_value(F, p, n, s, t) - xi_value(F, p, n, s, u) - xi_value(F, p, n, u, t);
    const ReducedLift right = lift_between(p, u, t, n);
    double rhs = 0.0;
    for (int k = 1; k <= n; ++k) rhs -= inner_product(controlled_remainder(F, p, n, k, s, u), right.level(k));
    return std::abs(lhs - rhs);
}

double pairwise_sum(const std::vector<double>& values) {
    auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> double {
        if (hi - lo <= 8) {
            double acc = 0.0;
            for (std::size_t i = lo; i < hi; ++i) acc += values[i];
            return acc;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return self(self, lo, mid) + self(self, mid, hi);
    };
    return rec(rec, 0, values.size());
}

namespace {

void check_partition(const SampledPath& p, const Partition& partition) {
    const auto& pts = partition.breakpoints();
    if (pts.front() != 0.0 || pts.back() != p.horizon())
        throw std::invalid_argument("compensated_sum: partition must cover [0, T]");
}

}  // namespace

double compensated_sum(const CausalFunctional& F, const SampledPath& p, int n, const Partition& partition) {
    require_derivatives(F, n, "compensated_sum");
    check_partition(p, partition);
    const auto& pts = partition.breakpoints();
    std::vector<double> cell_values(partition.cells());
    const auto cells = static_cast<std::ptrdiff_t>(cell_values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < cells; ++c) {
        const auto i = static_cast<std::size_t>(c);
        cell_values[i] = xi_value(F, p, n, pts[i], pts[i + 1]);
    }
    return pairwise_sum(cell_values);
}

namespace serial {

double compensated_sum(const CausalFunctional& F, const SampledPath& p, int n, const Partition& partition) {
    require_derivatives(F, n, "compensated_sum");
    check_partition(p, partition);
    const auto& pts = partition.breakpoints();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) acc += xi_value(F, p, n, pts[i], pts[i + 1]);
    return acc;
}

}  // namespace serial

double sewing_exponent(double alpha, int n) { return 2.0 * alpha + (n - 1) * alpha * alpha; }

int max_dyadic_level(const SampledPath& p) {
    const std::size_t N = p.steps();
    if ((N & (N - 1)) != 0) throw std::invalid_argument("rough_integral: N must be a power of two");
    int log2n = 0;
    while ((std::size_t{1} << log2n) < N) ++log2n;
    return log2n - 2;
}

IntegralResult rough_integral(const CausalFunctional& F, const SampledPath& p, int n, int max_level,
                              const RoughIntegralOptions& options) {
    require_derivatives(F, n, "rough_integral");
    const int cap = max_dyadic_level(p);
    if (max_level < 0 || max_level > cap)
        throw std::invalid_argument("rough_integral: level " + std::to_string(max_level) + " outside [0, " +
                                    std::to_string(cap) + "] (cells must span >= 4 samples)");

    IntegralResult res;
    for (int m = 0; m <= max_level; ++m)
        res.dyadic_trace.push_back(compensated_sum(F, p, n, dyadic_partition(0.0, p.horizon(), m)));
    double scale = 1.0;
    for (double v : res.dyadic_trace) scale = std::max(scale, std::abs(v));
    for (int m = 0; m < max_level; ++m)
        res.successive_diffs.push_back(std::abs(res.dyadic_trace[m + 1] - res.dyadic_trace[m]));
    res.value = res.dyadic_trace.back();

    // Diffs at round-off carry no rate information.
    const double floor = 1e3 * kEps * scale;
    std::vector<double> ms, logs;
    for (std::size_t m = 0; m < res.successive_diffs.size(); ++m) {
        if (res.successive_diffs[m] > floor) {
            ms.push_back(static_cast<double>(m));
            logs.push_back(std::log2(res.successive_diffs[m]));
        }
    }
    res.fitted_rate = ms.size() >= 2 ? -fit_line(ms, logs).slope : kNaN;

    const auto& d = res.successive_diffs;
    if (d.size() >= 3) {
        const std::size_t e = d.size();
        res.non_convergent = d[e - 3] <= d[e - 2] && d[e - 2] <= d[e - 1] && d[e - 1] > floor;
    }

    if (options.richardson && max_level >= 1 && std::isfinite(res.fitted_rate) && res.fitted_rate > 0.0) {
        const double last = res.dyadic_trace.back() - res.dyadic_trace[res.dyadic_trace.size() - 2];
        res.extrapolated = res.value + last / (std::exp2(res.fitted_rate) - 1.0);
    }
    return res;
}

RemainderFit remainder_holder_fit(const CausalFunctional& F, const SampledPath& p, double alpha, int n, int k,
                                  std::size_t pair_budget) {
    require_derivatives(F, n, "remainder_holder_fit");
    if (k < 1 || k > n) throw std::invalid_argument("remainder_holder_fit: need 1 <= k <= n");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("remainder_holder_fit: alpha must lie in (0, 1]");
    if (pair_budget == 0) throw std::invalid_argument("remainder_holder_fit: pair budget must be positive");

    const std::size_t N = p.steps();
    std::vector<std::size_t> spans;
    for (std::size_t span = 4; span <= N / 4; span *= 2) spans.push_back(span);
    if (spans.size() < 2) throw std::invalid_argument("remainder_holder_fit: path too short (need N >= 32)");

    RemainderFit fit;
    fit.k = k;
    fit.n = n;
    fit.alpha = alpha;
    fit.predicted_exponent = alpha + (n - k) * alpha * alpha;

    // Evenly strided anchors per scale, budget split across scales.
    const std::size_t per_scale = std::max<std::size_t>(1, pair_budget / spans.size());
    std::vector<std::size_t> pair_span, pair_start;
    for (std::size_t si = 0; si < spans.size(); ++si) {
        const std::size_t avail = N - spans[si] + 1;
        const std::size_t stride = std::max<std::size_t>(1, (avail + per_scale - 1) / per_scale);
        for (std::size_t i = 0; i < avail; i += stride) {
            pair_span.push_back(si);
            pair_start.push_back(i);
        }
    }

    std::vector<double> norms(pair_start.size());
    const auto pairs = static_cast<std::ptrdiff_t>(norms.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < pairs; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        const std::size_t i = pair_start[idx];
        const std::size_t j = i + spans[pair_span[idx]];
        norms[idx] = controlled_remainder(F, p, n, k, p.time(i), p.time(j)).norm();
    }

    fit.sup_values.assign(spans.size(), 0.0);
    fit.holder.alpha = fit.predicted_exponent;
    fit.holder.strategy = HolderStrategy::dyadic_pairs;
    fit.holder.pairs_evaluated = norms.size();
    for (std::size_t idx = 0; idx < norms.size(); ++idx) {
        const std::size_t si = pair_span[idx];
        fit.sup_values[si] = std::max(fit.sup_values[si], norms[idx]);
        const double len = static_cast<double>(spans[si]) * p.step();
        fit.holder.value = std::max(fit.holder.value, norms[idx] / std::pow(len, fit.predicted_exponent));
    }
    for (std::size_t span : spans) fit.scales.push_back(static_cast<double>(span) * p.step());

    constexpr double guard = 100.0 * kEps;
    std::vector<double> xs, ys;
    for (std::size_t si = 0; si < spans.size(); ++si) {
        if (fit.sup_values[si] >= guard) {
            xs.push_back(fit.scales[si]);
            ys.push_back(fit.sup_values[si]);
        }
    }
    if (xs.size() < 2) {
        fit.degenerate = true;
        fit.fitted_exponent = kNaN;
        fit.pass = true;
    } else {
        fit.fitted_exponent = fit_log_log(xs, ys).slope;
        fit.pass = fit.fitted_exponent >= fit.predicted_exponent - 0.15;
    }
    return fit;
}

ItoReport ito_residual(const CausalFunctional& F, const SampledPath& p, int n, int n_check, int max_level,
                       std::size_t quad) {
    require_derivatives(F, std::max(n, 1), "ito_residual");
    const PathView x(p);
    const GaussLegendre rule(quad);

    ItoReport rep;
    rep.order_warning = F.max_space_order() < n_check;
    rep.lhs = F.eval(p.horizon(), x) - F.eval(0.0, x);
    rep.time_integral = integrate_over_cells(p, 0.0, p.horizon(), rule,
                                             [&](double u, const PathCell&) { return F.time_derivative(u, x); });
    rep.integral = rough_integral(F, p, n, max_level);
    rep.residual = std::abs(rep.lhs - rep.time_integral - rep.integral.value);
    rep.last_diff = rep.integral.successive_diffs.empty() ? 0.0 : rep.integral.successive_diffs.back();
    return rep;
}

}  // namespace roughfunc
