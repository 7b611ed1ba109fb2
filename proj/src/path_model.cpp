// SPDX-License-Identifier: MIT
#include "roughfunc/path_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace roughfunc {

// ---------------------------------------------------------------------------
// SampledPath
// ---------------------------------------------------------------------------

SampledPath::SampledPath(double horizon, int dim, std::vector<double> samples)
    : horizon_(horizon), dim_(dim), steps_(0), samples_(std::move(samples)) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("SampledPath: horizon must be > 0");
    if (dim < 1) throw std::invalid_argument("SampledPath: dimension must be >= 1");
    const auto d = static_cast<std::size_t>(dim);
    if (samples_.size() % d != 0 || samples_.size() / d < 2)
        throw std::invalid_argument("SampledPath: need at least two samples of matching dimension");
    for (double v : samples_)
        if (!std::isfinite(v)) throw std::invalid_argument("SampledPath: non-finite sample");
    steps_ = samples_.size() / d - 1;

    // Exact prefix integrals of the piecewise-linear interpolant.
    moment0_.assign(samples_.size(), 0.0);
    moment1_.assign(samples_.size(), 0.0);
    const double h = step();
    for (std::size_t i = 0; i < steps_; ++i) {
        const double a = time(i);
        for (std::size_t c = 0; c < d; ++c) {
            const double x0 = samples_[i * d + c];
            const double x1 = samples_[(i + 1) * d + c];
            const double slope = (x1 - x0) / h;
            moment0_[(i + 1) * d + c] = moment0_[i * d + c] + 0.5 * h * (x0 + x1);
            moment1_[(i + 1) * d + c] =
                moment1_[i * d + c] + a * x0 * h + (a * slope + x0) * h * h / 2.0 + slope * h * h * h / 3.0;
        }
    }
}

SampledPath SampledPath::from_function(double horizon, std::size_t steps, int dim,
                                       const std::function<Point(double)>& fn) {
    if (steps < 1) throw std::invalid_argument("SampledPath::from_function: steps must be >= 1");
    std::vector<double> samples;
    samples.reserve((steps + 1) * static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = horizon * static_cast<double>(i) / static_cast<double>(steps);
        Point x = fn(t);
        if (static_cast<int>(x.size()) != dim)
            throw std::invalid_argument("SampledPath::from_function: callback returned wrong dimension");
        samples.insert(samples.end(), x.begin(), x.end());
    }
    return SampledPath(horizon, dim, std::move(samples));
}

double SampledPath::time(std::size_t i) const {
    if (i == steps_) return horizon_;
    return horizon_ * static_cast<double>(i) / static_cast<double>(steps_);
}

void SampledPath::require_time(double u, const char* who) const {
    if (!(u >= 0.0 && u <= horizon_))
        throw std::out_of_range(std::string(who) + ": time " + std::to_string(u) + " outside [0, T]");
}

std::size_t SampledPath::cell_of(double u) const {
    require_time(u, "SampledPath::cell_of");
    auto i = static_cast<std::size_t>(std::floor(u / step()));
    if (i >= steps_) i = steps_ - 1;
    // Guard the floor against round-off at grid points.
    while (i > 0 && time(i) > u) --i;
    while (i + 1 < steps_ && time(i + 1) <= u) ++i;
    return i;
}

void SampledPath::eval_into(double u, std::span<double> out) const {
    const std::size_t i = cell_of(u);
    const auto d = static_cast<std::size_t>(dim_);
    const double a = time(i);
    const double b = time(i + 1);
    if (u == a) {
        std::copy_n(samples_.begin() + static_cast<std::ptrdiff_t>(i * d), d, out.begin());
        return;
    }
    if (u == b) {
        std::copy_n(samples_.begin() + static_cast<std::ptrdiff_t>((i + 1) * d), d, out.begin());
        return;
    }
    const double w = (u - a) / (b - a);
    for (std::size_t c = 0; c < d; ++c) out[c] = (1.0 - w) * samples_[i * d + c] + w * samples_[(i + 1) * d + c];
}

Point SampledPath::eval(double u) const {
    Point out(static_cast<std::size_t>(dim_));
    eval_into(u, out);
    return out;
}

Point SampledPath::slope(std::size_t cell) const {
    if (cell >= steps_) throw std::out_of_range("SampledPath::slope: cell index");
    const auto d = static_cast<std::size_t>(dim_);
    Point out(d);
    for (std::size_t c = 0; c < d; ++c) out[c] = (samples_[(cell + 1) * d + c] - samples_[cell * d + c]) / step();
    return out;
}

Point SampledPath::moment_integral(double u, int moment) const {
    if (moment != 0 && moment != 1) throw std::invalid_argument("SampledPath::moment_integral: moment must be 0 or 1");
    const std::size_t i = cell_of(u);
    const auto d = static_cast<std::size_t>(dim_);
    const double a = time(i);
    const double delta = u - a;
    Point out(d);
    const auto& prefix = moment == 0 ? moment0_ : moment1_;
    for (std::size_t c = 0; c < d; ++c) {
        const double x0 = samples_[i * d + c];
        const double slope = (samples_[(i + 1) * d + c] - x0) / step();
        double piece;
        if (moment == 0)
            piece = x0 * delta + slope * delta * delta / 2.0;
        else
            piece = a * x0 * delta + (a * slope + x0) * delta * delta / 2.0 + slope * delta * delta * delta / 3.0;
        out[c] = prefix[i * d + c] + piece;
    }
    return out;
}

double SampledPath::sup_distance(const SampledPath& other) const {
    if (other.dim_ != dim_ || other.steps_ != steps_ || other.horizon_ != horizon_)
        throw std::invalid_argument("SampledPath::sup_distance: grids differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) worst = std::max(worst, std::abs(samples_[i] - other.samples_[i]));
    return worst;
}

// ---------------------------------------------------------------------------
// PathView
// ---------------------------------------------------------------------------

PathView::PathView(const SampledPath& base)
    : base_(&base), stop_(base.horizon()), bump_(static_cast<std::size_t>(base.dim()), 0.0) {}

PathView::PathView(const SampledPath& base, double stop, Point bump)
    : base_(&base), stop_(stop), bump_(std::move(bump)) {
    if (!(stop >= 0.0 && stop <= base.horizon())) throw std::out_of_range("PathView: stop time outside [0, T]");
    if (static_cast<int>(bump_.size()) != base.dim()) throw std::invalid_argument("PathView: bump dimension mismatch");
}

void PathView::eval_into(double u, std::span<double> out) const {
    if (u < stop_) {
        base_->eval_into(u, out);
        return;
    }
    if (u > base_->horizon()) throw std::out_of_range("PathView: time outside [0, T]");
    base_->eval_into(stop_, out);
    for (std::size_t c = 0; c < bump_.size(); ++c) out[c] += bump_[c];
}

Point PathView::operator()(double u) const {
    Point out(bump_.size());
    eval_into(u, out);
    return out;
}

PathView PathView::stopped(double t) const {
    if (t >= stop_) return *this;
    return PathView(*base_, t, Point(bump_.size(), 0.0));
}

Point PathView::moment_integral(double u, int moment) const {
    if (u <= stop_) return base_->moment_integral(u, moment);
    Point out = base_->moment_integral(stop_, moment);
    const Point frozen = (*this)(stop_);
    // integral_stop^u r^m dr
    const double weight = moment == 0 ? (u - stop_) : (u * u - stop_ * stop_) / 2.0;
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += weight * frozen[c];
    return out;
}

PathView stop_and_bump(const SampledPath& p, double t, Point h) { return PathView(p, t, std::move(h)); }

// ---------------------------------------------------------------------------
// Partitions and cells
// ---------------------------------------------------------------------------

Partition::Partition(std::vector<double> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.size() < 2) throw std::invalid_argument("Partition: need at least two breakpoints");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1])) throw std::invalid_argument("Partition: breakpoints must increase strictly");
}

double Partition::mesh() const {
    double m = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) m = std::max(m, points_[i] - points_[i - 1]);
    return m;
}

Partition dyadic_partition(double s, double t, int level) {
    if (level < 0) throw std::invalid_argument("dyadic_partition: level must be >= 0");
    if (level > 40) throw std::invalid_argument("dyadic_partition: level too large");
    const std::size_t m = std::size_t{1} << level;
    std::vector<double> pts(m + 1);
    for (std::size_t k = 0; k <= m; ++k) pts[k] = s + (t - s) * static_cast<double>(k) / static_cast<double>(m);
    pts[m] = t;
    return Partition(std::move(pts));
}

std::vector<PathCell> cells_between(const SampledPath& p, double s, double t) {
    if (!(s <= t)) throw std::invalid_argument("cells_between: need s <= t");
    std::vector<PathCell> out;
    if (s == t) return out;
    const std::size_t first = p.cell_of(s);
    const std::size_t last = p.cell_of(t);
    for (std::size_t i = first; i <= last; ++i) {
        const double a = std::max(s, p.time(i));
        const double b = std::min(t, p.time(i + 1));
        if (b > a) out.push_back({a, b, i});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hölder norms
// ---------------------------------------------------------------------------

double increment_norm(const SampledPath& p, std::size_t i, std::size_t j) {
    const auto xi = p.sample(i);
    const auto xj = p.sample(j);
    double s = 0.0;
    for (std::size_t c = 0; c < xi.size(); ++c) {
        const double diff = xj[c] - xi[c];
        s += diff * diff;
    }
    return std::sqrt(s);
}

namespace {

bool use_full_pairs(std::size_t steps, std::size_t budget) {
    const double pairs = 0.5 * static_cast<double>(steps) * static_cast<double>(steps + 1);
    return pairs <= static_cast<double>(budget);
}

// Spans round(2^{j/8}), j = 0, 1, ..., deduplicated, up to steps.
std::vector<std::size_t> reduced_spans(std::size_t steps) {
    constexpr int per_octave = 8;
    std::vector<std::size_t> spans;
    for (int j = 0;; ++j) {
        const auto span = static_cast<std::size_t>(std::lround(std::exp2(static_cast<double>(j) / per_octave)));
        if (span > steps) break;
        if (spans.empty() || span != spans.back()) spans.push_back(span);
    }
    return spans;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("holder_norm: alpha must lie in (0, 1)");
}

}  // namespace

HolderEstimate holder_norm(std::size_t steps, double horizon, double alpha, std::size_t pair_budget,
                           const IncrementNorm& increment) {
    check_alpha(alpha);
    HolderEstimate est;
    est.alpha = alpha;
    const double dt = horizon / static_cast<double>(steps);
    const auto n = static_cast<std::ptrdiff_t>(steps);
    double best = 0.0;
    std::size_t count = 0;

    if (use_full_pairs(steps, pair_budget)) {
        est.strategy = HolderStrategy::full_pairs;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best) reduction(+ : count)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            for (std::ptrdiff_t j = i + 1; j <= n; ++j) {
                const double span = static_cast<double>(j - i) * dt;
                const double r =
                    increment(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) / std::pow(span, alpha);
                best = std::max(best, r);
                ++count;
            }
        }
    } else {
        est.strategy = HolderStrategy::dyadic_pairs;
        for (const std::size_t us : reduced_spans(steps)) {
            const auto span = static_cast<std::ptrdiff_t>(us);
            const double denom = std::pow(static_cast<double>(span) * dt, alpha);
#pragma omp parallel for schedule(static) reduction(max : best) reduction(+ : count)
            for (std::ptrdiff_t i = 0; i <= n - span; ++i) {
                best = std::max(best, increment(static_cast<std::size_t>(i), static_cast<std::size_t>(i + span)) / denom);
                ++count;
            }
        }
    }
    est.value = best;
    est.pairs_evaluated = count;
    return est;
}

HolderEstimate holder_norm(const SampledPath& p, double alpha, std::size_t pair_budget) {
    return holder_norm(p.steps(), p.horizon(), alpha, pair_budget,
                       [&p](std::size_t i, std::size_t j) { return increment_norm(p, i, j); });
}

namespace serial {

HolderEstimate holder_norm(std::size_t steps, double horizon, double alpha, std::size_t pair_budget,
                           const IncrementNorm& increment) {
    check_alpha(alpha);
    HolderEstimate est;
    est.alpha = alpha;
    const double dt = horizon / static_cast<double>(steps);
    if (use_full_pairs(steps, pair_budget)) {
        est.strategy = HolderStrategy::full_pairs;
        for (std::size_t i = 0; i < steps; ++i)
            for (std::size_t j = i + 1; j <= steps; ++j) {
                est.value = std::max(est.value, increment(i, j) / std::pow(static_cast<double>(j - i) * dt, alpha));
                ++est.pairs_evaluated;
            }
    } else {
        est.strategy = HolderStrategy::dyadic_pairs;
        for (const std::size_t span : reduced_spans(steps))
            for (std::size_t i = 0; i + span <= steps; ++i) {
                est.value =
                    std::max(est.value, increment(i, i + span) / std::pow(static_cast<double>(span) * dt, alpha));
                ++est.pairs_evaluated;
            }
    }
    return est;
}

HolderEstimate holder_norm(const SampledPath& p, double alpha, std::size_t pair_budget) {
    return holder_norm(p.steps(), p.horizon(), alpha, pair_budget,
                       [&p](std::size_t i, std::size_t j) { return increment_norm(p, i, j); });
}

}  // namespace serial

// ---------------------------------------------------------------------------
// Coarsening
// ---------------------------------------------------------------------------

SampledPath coarsen_linear_cells(const SampledPath& p, double s, double t, std::size_t subintervals) {
    if (!(s >= 0.0 && t <= p.horizon() && s < t)) throw std::invalid_argument("coarsen_linear: degenerate interval");
    if (subintervals < 1) throw std::invalid_argument("coarsen_linear: need at least one subinterval");
    const auto is = static_cast<std::size_t>(std::llround(s / p.step()));
    const auto it = static_cast<std::size_t>(std::llround(t / p.step()));
    if (it <= is) throw std::invalid_argument("coarsen_linear: interval shorter than one grid step");
    const std::size_t span = it - is;
    const std::size_t m = std::min(subintervals, span);

    const auto d = static_cast<std::size_t>(p.dim());
    std::vector<double> out(p.raw().begin(), p.raw().end());
    std::size_t left = is;
    for (std::size_t j = 1; j <= m; ++j) {
        const std::size_t right = is + static_cast<std::size_t>(std::llround(static_cast<double>(j * span) / static_cast<double>(m)));
        for (std::size_t i = left + 1; i < right; ++i) {
            const double w = static_cast<double>(i - left) / static_cast<double>(right - left);
            for (std::size_t c = 0; c < d; ++c)
                out[i * d + c] = (1.0 - w) * p.sample(left)[c] + w * p.sample(right)[c];
        }
        left = right;
    }
    return SampledPath(p.horizon(), p.dim(), std::move(out));
}

SampledPath coarsen_linear(const SampledPath& p, double s, double t, double mesh_target) {
    if (!(mesh_target > 0.0)) throw std::invalid_argument("coarsen_linear: mesh target must be > 0");
    if (!(s < t)) throw std::invalid_argument("coarsen_linear: degenerate interval");
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil((t - s) / mesh_target - 1e-12)));
    return coarsen_linear_cells(p, s, t, m);
}

std::size_t balanced_subinterval_count(double length, int n, double alpha) {
    if (!(length > 0.0 && length <= 1.0)) throw std::invalid_argument("balanced_subinterval_count: need 0 < length <= 1");
    if (n < 1) throw std::invalid_argument("balanced_subinterval_count: n must be >= 1");
    return static_cast<std::size_t>(std::ceil(std::pow(length, -static_cast<double>(n - 1) * alpha) - 1e-12));
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

double parse_double(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && *begin == ' ') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw std::runtime_error("path CSV line " + std::to_string(line_no) + ": bad number '" + field + "'");
    return v;
}

}  // namespace

void write_path_csv(std::ostream& out, const SampledPath& p) {
    out << "t";
    for (int c = 1; c <= p.dim(); ++c) out << ",x" << c;
    out << '\n';
    for (std::size_t i = 0; i <= p.steps(); ++i) {
        out << format_double(p.time(i));
        for (double v : p.sample(i)) out << ',' << format_double(v);
        out << '\n';
    }
}

SampledPath read_path_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("path CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_commas(line);
    if (header.size() < 2 || header[0] != "t") throw std::runtime_error("path CSV line 1: expected header t,x1,...");
    for (std::size_t c = 1; c < header.size(); ++c)
        if (header[c] != "x" + std::to_string(c)) throw std::runtime_error("path CSV line 1: bad column '" + header[c] + "'");
    const int dim = static_cast<int>(header.size()) - 1;

    std::vector<double> times, samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != header.size())
            throw std::runtime_error("path CSV line " + std::to_string(line_no) + ": wrong column count");
        times.push_back(parse_double(fields[0], line_no));
        for (std::size_t c = 1; c < fields.size(); ++c) samples.push_back(parse_double(fields[c], line_no));
    }
    if (times.size() < 2) throw std::runtime_error("path CSV: need at least two rows");
    if (times.front() != 0.0) throw std::runtime_error("path CSV: first time must be 0");
    const double horizon = times.back();
    const double n = static_cast<double>(times.size() - 1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = horizon * static_cast<double>(i) / n;
        if (std::abs(times[i] - expected) > 1e-12 * std::max(1.0, horizon))
            throw std::runtime_error("path CSV line " + std::to_string(i + 2) + ": grid is not uniform");
    }
    return SampledPath(horizon, dim, std::move(samples));
}

}  // namespace roughfunc
