// SPDX-License-Identifier: MIT
#include "roughfunc/taylor_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "roughfunc/quadrature.hpp"
#include "roughfunc/regression.hpp"
#include "roughfunc/rng.hpp"

namespace roughfunc {

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Point difference(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

void check_interval(const SampledPath& p, double s, double t) {
    if (!(s >= 0.0 && s <= t && t <= p.horizon())) throw std::invalid_argument("taylor: invalid interval");
}

}  // namespace

double TaylorReport::rhs() const {
    double acc = remainder;
    for (double v : time_terms) acc += v;
    for (double v : space_terms) acc += v;
    return acc;
}

TaylorReport taylor_residual(const CausalFunctional& F, const SampledPath& p, double s, double t, int n,
                             std::size_t quad) {
    if (n < 1) throw std::invalid_argument("taylor_residual: n must be >= 1");
    if (F.max_space_order() < n)
        throw std::invalid_argument("taylor_residual: functional provides only " + std::to_string(F.max_space_order()) +
                                    " space derivatives, need " + std::to_string(n));
    check_interval(p, s, t);
    const PathView x(p);
    const GaussLegendre rule(quad);

    TaylorReport rep;
    rep.s = s;
    rep.t = t;
    rep.n = n;
    rep.quadrature_points = quad;
    rep.lhs = F.eval(t, x) - F.eval(s, x);
    rep.time_terms.assign(static_cast<std::size_t>(n), 0.0);
    rep.space_terms.assign(static_cast<std::size_t>(n), 0.0);

    const Point xt = p.eval(t);
    const Point increment = difference(xt, p.eval(s));
    for (int k = 1; k < n; ++k)
        rep.space_terms[static_cast<std::size_t>(k)] =
            inner_product(F.space_derivative(k, s, x), LevelTensor::power(increment, k)) / factorial(k);

    for (int k = 0; k < n; ++k) {
        rep.time_terms[static_cast<std::size_t>(k)] =
            integrate_over_cells(p, s, t, rule, [&](double u, const PathCell&) {
                const Point rest = difference(xt, p.eval(u));
                return inner_product(F.time_space_derivative(k, u, x), LevelTensor::power(rest, k));
            }) /
            factorial(k);
    }

    rep.remainder = integrate_over_cells(p, s, t, rule, [&](double u, const PathCell& cell) {
                        const Point rest = difference(xt, p.eval(u));
                        const LevelTensor direction =
                            tensor_product(LevelTensor::power(rest, n - 1), LevelTensor::vector(p.slope(cell.index)));
                        return inner_product(F.space_derivative(n, u, x), direction);
                    }) /
                    factorial(n - 1);

    rep.residual = std::abs(rep.lhs - rep.rhs());
    return rep;
}

double remainder_lhs(const CausalFunctional& F, const SampledPath& p, double s, double t, int l, std::size_t quad) {
    if (l < 0) throw std::invalid_argument("remainder_lhs: l must be >= 0");
    if (l > F.max_space_order()) throw std::invalid_argument("remainder_lhs: l exceeds available derivative order");
    check_interval(p, s, t);
    if (t - s > 1.0) throw std::invalid_argument("remainder_lhs: need |t - s| <= 1");
    const PathView x(p);
    const GaussLegendre rule(quad);

    double approx = F.eval(s, x);
    approx += integrate_over_cells(p, s, t, rule, [&](double u, const PathCell&) { return F.time_derivative(u, x); });
    const Point increment = difference(p.eval(t), p.eval(s));
    for (int k = 1; k <= l; ++k)
        approx += inner_product(F.space_derivative(k, s, x), LevelTensor::power(increment, k)) / factorial(k);
    return std::abs(F.eval(t, x) - approx);
}

double predicted_remainder_exponent(double alpha, int n, int l) {
    return std::min({alpha + (n - 1) * alpha * alpha, 1.0 + alpha, (l + 1) * alpha});
}

std::vector<double> geometric_ladder(int from_exponent, int to_exponent) {
    if (to_exponent < from_exponent) throw std::invalid_argument("geometric_ladder: empty range");
    std::vector<double> out;
    for (int e = from_exponent; e <= to_exponent; ++e) out.push_back(std::ldexp(1.0, -e));
    return out;
}

namespace {

struct ScalingPlan {
    std::vector<double> starts;  // lengths.size() * anchors, row-major by length
};

ScalingPlan plan_scaling(const CausalFunctional& F, const SampledPath& p, double alpha, int n, int l,
                         const std::vector<double>& ladder, const ScalingOptions& options) {
    if (ladder.size() < 4) throw std::invalid_argument("scaling_experiment: ladder too short (< 4 points)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("scaling_experiment: alpha must lie in (0, 1)");
    if (l < 0 || l > n - 1) throw std::invalid_argument("scaling_experiment: need 0 <= l <= n - 1");
    if (F.max_space_order() < l) throw std::invalid_argument("scaling_experiment: functional lacks order-l derivative");
    if (options.anchors < 1) throw std::invalid_argument("scaling_experiment: need at least one anchor");
    for (double len : ladder)
        if (!(len > 0.0 && len <= 1.0 && len <= p.horizon()))
            throw std::invalid_argument("scaling_experiment: ladder lengths must lie in (0, min(1, T)]");

    // Stratified common anchors: u_a uniform in [a/A, (a+1)/A), reused at
    // every length so the ladder compares like with like.
    auto rng = make_engine(options.seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto count = static_cast<double>(options.anchors);
    std::vector<double> u(options.anchors);
    for (std::size_t a = 0; a < u.size(); ++a) u[a] = (static_cast<double>(a) + unit(rng)) / count;

    ScalingPlan plan;
    plan.starts.reserve(ladder.size() * options.anchors);
    for (double len : ladder)
        for (double v : u) plan.starts.push_back(v * (p.horizon() - len));
    return plan;
}

ScalingReport finish_scaling(double alpha, int n, int l, const std::vector<double>& ladder, std::size_t anchors,
                             const std::vector<double>& defects) {
    ScalingReport rep;
    rep.alpha = alpha;
    rep.n = n;
    rep.l = l;
    rep.lengths = ladder;
    rep.max_defects.assign(ladder.size(), 0.0);
    for (std::size_t li = 0; li < ladder.size(); ++li)
        for (std::size_t a = 0; a < anchors; ++a)
            rep.max_defects[li] = std::max(rep.max_defects[li], defects[li * anchors + a]);
    rep.predicted_exponent = predicted_remainder_exponent(alpha, n, l);

    constexpr double guard = 100.0 * std::numeric_limits<double>::epsilon();
    std::vector<double> xs, ys;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        if (rep.max_defects[li] >= guard) {
            xs.push_back(ladder[li]);
            ys.push_back(rep.max_defects[li]);
        }
    }
    rep.fitted_points = xs.size();
    if (xs.size() < 2) {
        rep.degenerate = true;
        rep.fitted_slope = std::numeric_limits<double>::quiet_NaN();
        rep.pass = true;
    } else {
        rep.fitted_slope = fit_log_log(xs, ys).slope;
        rep.pass = rep.fitted_slope >= rep.predicted_exponent - kSlopeTolerance;
    }
    return rep;
}

}  // namespace

ScalingReport scaling_experiment(const CausalFunctional& F, const SampledPath& p, double alpha, int n, int l,
                                 const std::vector<double>& ladder, const ScalingOptions& options) {
    const ScalingPlan plan = plan_scaling(F, p, alpha, n, l, ladder, options);
    std::vector<double> defects(plan.starts.size());
    const auto cells = static_cast<std::ptrdiff_t>(plan.starts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < cells; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        const double s = plan.starts[idx];
        const double len = ladder[idx / options.anchors];
        defects[idx] = remainder_lhs(F, p, s, std::min(s + len, p.horizon()), l, options.quadrature);
    }
    return finish_scaling(alpha, n, l, ladder, options.anchors, defects);
}

namespace serial {

ScalingReport scaling_experiment(const CausalFunctional& F, const SampledPath& p, double alpha, int n, int l,
                                 const std::vector<double>& ladder, const ScalingOptions& options) {
    const ScalingPlan plan = plan_scaling(F, p, alpha, n, l, ladder, options);
    std::vector<double> defects(plan.starts.size());
    for (std::size_t idx = 0; idx < plan.starts.size(); ++idx) {
        const double s = plan.starts[idx];
        const double len = ladder[idx / options.anchors];
        defects[idx] = remainder_lhs(F, p, s, std::min(s + len, p.horizon()), l, options.quadrature);
    }
    return finish_scaling(alpha, n, l, ladder, options.anchors, defects);
}

}  // namespace serial

namespace {

void check_exponent(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument(std::string(who) + ": alpha must lie in (0, 1)");
}

// Smallest n >= 1 with base + (n-1) alpha^2 > 1: closed-form guess, then
// corrected against the exact predicate.
int smallest_order(double base, double alpha) {
    auto holds = [&](int n) { return base + (n - 1) * alpha * alpha > 1.0; };
    const double gap = (1.0 - base) / (alpha * alpha);
    int n = gap < 0.0 ? 1 : static_cast<int>(std::floor(gap)) + 2;
    while (n > 1 && holds(n - 1)) --n;
    while (!holds(n)) ++n;
    return n;
}

}  // namespace

int choose_n(double alpha) {
    check_exponent(alpha, "choose_n");
    return smallest_order(2.0 * alpha, alpha);
}

int choose_n_tilde(double alpha) {
    check_exponent(alpha, "choose_n_tilde");
    return smallest_order(alpha, alpha);
}

}  // namespace roughfunc
