// SPDX-License-Identifier: MIT
#include "roughfunc/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "roughfunc/quadrature.hpp"
#include "roughfunc/regression.hpp"

namespace roughfunc {

// ---------------------------------------------------------------------------
// Profile
// ---------------------------------------------------------------------------

Profile Profile::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    return Profile(Polynomial{std::move(coeffs)});
}

Profile Profile::monomial(int degree, double scale) {
    if (degree < 0) throw std::invalid_argument("Profile::monomial: negative degree");
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = scale;
    return polynomial(std::move(c));
}

Profile Profile::sine(double frequency, double phase) { return Profile(Sine{frequency, phase}); }

double Profile::derivative(int k, double x) const {
    if (k < 0) throw std::invalid_argument("Profile::derivative: negative order");
    if (const auto* poly = std::get_if<Polynomial>(&form_)) {
        const auto& c = poly->coeffs;
        const auto n = static_cast<int>(c.size());
        double acc = 0.0;
        for (int i = n - 1; i >= k; --i) {
            double falling = 1.0;
            for (int j = 0; j < k; ++j) falling *= static_cast<double>(i - j);
            acc = acc * x + falling * c[static_cast<std::size_t>(i)];
        }
        return acc;
    }
    const auto& s = std::get<Sine>(form_);
    return std::pow(s.frequency, k) * std::sin(s.frequency * x + s.phase + k * std::numbers::pi / 2.0);
}

std::string Profile::describe() const {
    std::ostringstream out;
    if (const auto* poly = std::get_if<Polynomial>(&form_)) {
        out << "poly[";
        for (std::size_t i = 0; i < poly->coeffs.size(); ++i) out << (i ? "," : "") << poly->coeffs[i];
        out << "]";
    } else {
        const auto& s = std::get<Sine>(form_);
        out << "sin(" << s.frequency << "x+" << s.phase << ")";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

void CausalFunctional::require_order(int k) const {
    if (k < 0 || k > max_space_order())
        throw std::invalid_argument(name() + ": derivative order " + std::to_string(k) + " exceeds declared order " +
                                    std::to_string(max_space_order()));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

LevelTensor ridge_tensor(double scale, const std::vector<double>& direction, int k) {
    LevelTensor t = LevelTensor::power(direction, k);
    t *= scale;
    return t;
}

void check_direction(const std::vector<double>& direction, const char* who) {
    if (direction.empty()) throw std::invalid_argument(std::string(who) + ": empty direction");
}

void check_view(const PathView& x, int dim, const std::string& who) {
    if (x.dim() != dim) throw std::invalid_argument(who + ": path dimension does not match functional");
}

constexpr std::size_t kIntegralRulePoints = 16;

}  // namespace

// ---------------------------------------------------------------------------
// F1
// ---------------------------------------------------------------------------

PointFunctional::PointFunctional(Profile f, std::vector<double> direction, int max_order)
    : f_(std::move(f)), direction_(std::move(direction)), max_order_(max_order) {
    check_direction(direction_, "PointFunctional");
}

std::string PointFunctional::name() const { return "F1:" + f_.describe(); }

double PointFunctional::eval(double t, const PathView& x) const {
    check_view(x, dim(), name());
    return f_.value(dot(direction_, x(t)));
}

double PointFunctional::time_derivative(double, const PathView& x) const {
    check_view(x, dim(), name());
    return 0.0;
}

LevelTensor PointFunctional::space_derivative(int k, double t, const PathView& x) const {
    require_order(k);
    check_view(x, dim(), name());
    return ridge_tensor(f_.derivative(k, dot(direction_, x(t))), direction_, k);
}

LevelTensor PointFunctional::time_space_derivative(int k, double, const PathView& x) const {
    require_order(k);
    check_view(x, dim(), name());
    return LevelTensor(dim(), k);
}

// ---------------------------------------------------------------------------
// F2
// ---------------------------------------------------------------------------

RunningIntegralFunctional::RunningIntegralFunctional(Profile g, std::vector<double> direction, int max_order)
    : g_(std::move(g)), direction_(std::move(direction)), max_order_(max_order) {
    check_direction(direction_, "RunningIntegralFunctional");
}

std::string RunningIntegralFunctional::name() const { return "F2:" + g_.describe(); }

double RunningIntegralFunctional::eval(double t, const PathView& x) const {
    check_view(x, dim(), name());
    static const GaussLegendre rule(kIntegralRulePoints);
    const SampledPath& base = x.base();
    const double moving_end = std::min(t, x.stop_time());
    Point buf(static_cast<std::size_t>(dim()));
    double acc = integrate_over_cells(base, 0.0, moving_end, rule, [&](double u, const PathCell&) {
        base.eval_into(u, buf);
        return g_.value(dot(direction_, buf));
    });
    if (t > x.stop_time()) acc += (t - x.stop_time()) * g_.value(dot(direction_, x(x.stop_time())));
    return acc;
}

double RunningIntegralFunctional::time_derivative(double t, const PathView& x) const {
    check_view(x, dim(), name());
    return g_.value(dot(direction_, x(t)));
}

LevelTensor RunningIntegralFunctional::space_derivative(int k, double t, const PathView& x) const {
    require_order(k);
    if (k == 0) return LevelTensor::scalar(eval(t, x), dim());
    return LevelTensor(dim(), k);
}

LevelTensor RunningIntegralFunctional::time_space_derivative(int k, double t, const PathView& x) const {
    require_order(k);
    if (k == 0) return LevelTensor::scalar(time_derivative(t, x), dim());
    return LevelTensor(dim(), k);
}

// ---------------------------------------------------------------------------
// F3
// ---------------------------------------------------------------------------

PathIntegralFunctional::PathIntegralFunctional(Profile point_part, Profile integral_part, std::vector<double> direction,
                                               std::vector<double> integral_direction, double weight0, double weight1,
                                               int max_order)
    : phi_(std::move(point_part)),
      chi_(std::move(integral_part)),
      direction_(std::move(direction)),
      integral_direction_(std::move(integral_direction)),
      w0_(weight0),
      w1_(weight1),
      max_order_(max_order) {
    check_direction(direction_, "PathIntegralFunctional");
    if (integral_direction_.size() != direction_.size())
        throw std::invalid_argument("PathIntegralFunctional: direction sizes differ");
}

std::string PathIntegralFunctional::name() const { return "F3:" + phi_.describe() + "*" + chi_.describe(); }

double PathIntegralFunctional::integral_argument(double t, const PathView& x) const {
    const Point m0 = x.moment_integral(t, 0);
    double acc = w0_ * dot(integral_direction_, m0);
    if (w1_ != 0.0) acc += w1_ * dot(integral_direction_, x.moment_integral(t, 1));
    return acc;
}

double PathIntegralFunctional::eval(double t, const PathView& x) const {
    check_view(x, dim(), name());
    return phi_.value(dot(direction_, x(t))) * chi_.value(integral_argument(t, x));
}

double PathIntegralFunctional::time_derivative(double t, const PathView& x) const {
    return time_space_derivative(0, t, x)[0];
}

LevelTensor PathIntegralFunctional::space_derivative(int k, double t, const PathView& x) const {
    require_order(k);
    check_view(x, dim(), name());
    const double a = dot(direction_, x(t));
    return ridge_tensor(phi_.derivative(k, a) * chi_.value(integral_argument(t, x)), direction_, k);
}

LevelTensor PathIntegralFunctional::time_space_derivative(int k, double t, const PathView& x) const {
    require_order(k);
    check_view(x, dim(), name());
    const Point xt = x(t);
    const double a = dot(direction_, xt);
    const double rate = weight(t) * dot(integral_direction_, xt);
    return ridge_tensor(phi_.derivative(k, a) * chi_.derivative(1, integral_argument(t, x)) * rate, direction_, k);
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

std::vector<double> default_fd_steps() { return {1e-2, 1e-3, 1e-4, 1e-5}; }

double FdReport::error_at(double step) const {
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (steps[i] == step) return errors[i];
    throw std::invalid_argument("FdReport::error_at: step not in grid");
}

namespace {

// Fits the convergence order on steps whose error clearly exceeds the
// round-off level eps * scale / h^power.
void finish_report(FdReport& report, double scale, int power) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
        report.max_error = std::max(report.max_error, report.errors[i]);
        const double h = report.steps[i];
        const double roundoff = 1e3 * eps * std::max(1.0, scale) / std::pow(h, power);
        if (report.errors[i] > roundoff) {
            lx.push_back(std::log(h));
            ly.push_back(std::log(report.errors[i]));
        }
    }
    if (lx.size() < 2) {
        report.exact = true;
        report.observed_order = std::numeric_limits<double>::quiet_NaN();
    } else {
        report.observed_order = fit_line(lx, ly).slope;
    }
}

}  // namespace

FdReport fd_check_space(const CausalFunctional& F, int k, double t, const SampledPath& path,
                        const std::vector<double>& steps) {
    if (k != 1 && k != 2) throw std::invalid_argument("fd_check_space: only k = 1 and k = 2 are supported");
    if (steps.empty()) throw std::invalid_argument("fd_check_space: empty step grid");
    const int d = path.dim();
    const auto du = static_cast<std::size_t>(d);
    const PathView base(path);
    const LevelTensor analytic = F.space_derivative(k, t, base);

    auto bumped = [&](const Point& h) { return F.eval(t, stop_and_bump(path, t, h)); };
    const double f0 = bumped(Point(du, 0.0));

    FdReport report;
    for (double h : steps) {
        double worst = 0.0;
        if (k == 1) {
            for (std::size_t i = 0; i < du; ++i) {
                Point plus(du, 0.0), minus(du, 0.0);
                plus[i] = h;
                minus[i] = -h;
                const double fd = (bumped(plus) - bumped(minus)) / (2.0 * h);
                worst = std::max(worst, std::abs(fd - analytic[i]));
            }
        } else {
            for (std::size_t i = 0; i < du; ++i) {
                for (std::size_t j = 0; j < du; ++j) {
                    double fd;
                    if (i == j) {
                        Point plus(du, 0.0), minus(du, 0.0);
                        plus[i] = h;
                        minus[i] = -h;
                        fd = (bumped(plus) - 2.0 * f0 + bumped(minus)) / (h * h);
                    } else {
                        Point pp(du, 0.0), pm(du, 0.0), mp(du, 0.0), mm(du, 0.0);
                        pp[i] = h, pp[j] = h;
                        pm[i] = h, pm[j] = -h;
                        mp[i] = -h, mp[j] = h;
                        mm[i] = -h, mm[j] = -h;
                        fd = (bumped(pp) - bumped(pm) - bumped(mp) + bumped(mm)) / (4.0 * h * h);
                    }
                    worst = std::max(worst, std::abs(fd - analytic[i * du + j]));
                }
            }
        }
        report.steps.push_back(h);
        report.errors.push_back(worst);
    }
    finish_report(report, std::abs(f0), k);
    return report;
}

FdReport fd_check_time(const CausalFunctional& F, double t, const SampledPath& path, const std::vector<double>& steps) {
    if (!(t < path.horizon())) throw std::invalid_argument("fd_check_time: need t < T");
    const PathView stopped = PathView(path).stopped(t);
    const double f0 = F.eval(t, stopped);
    const double analytic = F.time_derivative(t, PathView(path));
    FdReport report;
    for (double h : steps) {
        if (t + 2.0 * h > path.horizon()) continue;
        // same stencil written in differences, so a frozen value gives exactly 0
        const double fd = (4.0 * (F.eval(t + h, stopped) - f0) - (F.eval(t + 2.0 * h, stopped) - f0)) / (2.0 * h);
        report.steps.push_back(h);
        report.errors.push_back(std::abs(fd - analytic));
    }
    if (report.steps.empty()) throw std::invalid_argument("fd_check_time: no step fits before T");
    finish_report(report, std::abs(f0), 1);
    return report;
}

double lipschitz_ratio(const CausalFunctional& F, double t, const SampledPath& x, const SampledPath& y) {
    if (x.steps() != y.steps() || x.horizon() != y.horizon() || x.dim() != y.dim())
        throw std::invalid_argument("lipschitz_ratio: grids differ");
    double sup = 0.0;
    auto track = [&](std::span<const double> a, std::span<const double> b) {
        for (std::size_t c = 0; c < a.size(); ++c) sup = std::max(sup, std::abs(a[c] - b[c]));
    };
    const std::size_t last = x.cell_of(t);
    for (std::size_t i = 0; i <= last; ++i) track(x.sample(i), y.sample(i));
    const Point xt = x.eval(t), yt = y.eval(t);
    track(xt, yt);
    if (sup == 0.0) return 0.0;
    return std::abs(F.eval(t, PathView(x)) - F.eval(t, PathView(y))) / sup;
}

}  // namespace roughfunc
