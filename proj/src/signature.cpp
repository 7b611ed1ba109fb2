// SPDX-License-Identifier: MIT
#include "roughfunc/signature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughfunc {

namespace {

void check_depth(int depth) {
    if (depth < 0 || depth > kMaxSignatureDepth)
        throw std::invalid_argument("signature depth must lie in 0.." + std::to_string(kMaxSignatureDepth));
}

void check_interval(const SampledPath& p, double s, double t) {
    if (!(s >= 0.0 && s <= t && t <= p.horizon())) throw std::invalid_argument("signature: invalid interval");
}

}  // namespace

TruncatedSeries segment_signature(std::span<const double> delta, int depth) {
    check_depth(depth);
    const int d = static_cast<int>(delta.size());
    TruncatedSeries out = TruncatedSeries::unit(d, depth);
    if (depth == 0) return out;
    const LevelTensor step = LevelTensor::vector(delta);
    for (int k = 1; k <= depth; ++k) {
        out.level(k) = tensor_product(out.level(k - 1), step);
        out.level(k) *= 1.0 / static_cast<double>(k);
    }
    return out;
}

TruncatedSeries path_signature(const SampledPath& p, double s, double t, int depth) {
    check_depth(depth);
    check_interval(p, s, t);
    TruncatedSeries sig = TruncatedSeries::unit(p.dim(), depth);
    const auto d = static_cast<std::size_t>(p.dim());
    Point xa(d), xb(d), delta(d);
    for (const PathCell& cell : cells_between(p, s, t)) {
        // Signature of a sub-segment is the exponential of the proportional increment.
        p.eval_into(cell.a, xa);
        p.eval_into(cell.b, xb);
        for (std::size_t c = 0; c < d; ++c) delta[c] = xb[c] - xa[c];
        sig = truncated_product(sig, segment_signature(delta, depth));
    }
    return sig;
}

double brute_force_signature(const SampledPath& p, double s, double t, const Word& word, std::size_t subdivisions) {
    if (static_cast<int>(word.size()) > kMaxBruteForceWord)
        throw std::invalid_argument("brute_force_signature: word longer than 4");
    if (word.dim() != p.dim()) throw std::invalid_argument("brute_force_signature: alphabet mismatch");
    if (subdivisions < 1) throw std::invalid_argument("brute_force_signature: subdivisions must be >= 1");
    check_interval(p, s, t);
    const std::size_t k = word.size();
    if (k == 0) return 1.0;

    // partial[l] = sum over j_1 < ... < j_l < current step of dX^{w_1}_{j_1} ... dX^{w_l}_{j_l}
    std::vector<double> partial(k + 1, 0.0);
    partial[0] = 1.0;
    Point prev = p.eval(s);
    Point next(prev.size());
    const double h = (t - s) / static_cast<double>(subdivisions);
    for (std::size_t j = 1; j <= subdivisions; ++j) {
        const double u = j == subdivisions ? t : s + h * static_cast<double>(j);
        p.eval_into(u, next);
        for (std::size_t l = k; l >= 1; --l) {
            const auto letter = static_cast<std::size_t>(word[l - 1]);
            partial[l] += partial[l - 1] * (next[letter] - prev[letter]);
        }
        std::swap(prev, next);
    }
    return partial[k];
}

ReducedLift reduced_lift_from_increment(std::span<const double> delta, double s, double t, int depth) {
    check_depth(depth);
    ReducedLift lift;
    lift.dim = static_cast<int>(delta.size());
    lift.depth = depth;
    lift.s = s;
    lift.t = t;
    lift.levels.reserve(static_cast<std::size_t>(depth) + 1);
    double factorial = 1.0;
    for (int k = 0; k <= depth; ++k) {
        if (k > 0) factorial *= k;
        LevelTensor level = LevelTensor::power(delta, k);
        level *= 1.0 / factorial;
        lift.levels.push_back(std::move(level));
    }
    return lift;
}

ReducedLift reduced_lift(const SampledPath& p, double s, double t, int depth) {
    check_interval(p, s, t);
    Point delta = p.eval(t);
    const Point xs = p.eval(s);
    for (std::size_t c = 0; c < delta.size(); ++c) delta[c] -= xs[c];
    return reduced_lift_from_increment(delta, s, t, depth);
}

double check_reduced_chen(const ReducedLift& whole, const ReducedLift& left, const ReducedLift& right) {
    if (left.t != right.s || whole.s != left.s || whole.t != right.t)
        throw std::invalid_argument("check_reduced_chen: intervals do not chain");
    if (whole.depth != left.depth || left.depth != right.depth || whole.dim != left.dim || left.dim != right.dim)
        throw std::invalid_argument("check_reduced_chen: depth/dimension mismatch");
    double defect = 0.0;
    for (int k = 0; k <= whole.depth; ++k) {
        LevelTensor product(whole.dim, k);
        for (int j = 0; j <= k; ++j) product += tensor_product(left.level(j), right.level(k - j));
        defect = std::max(defect, (whole.level(k) - sym_project(product)).norm());
    }
    return defect;
}

double check_reduced_chen(const SampledPath& p, double s, double u, double t, int depth) {
    if (!(s <= u && u <= t)) throw std::invalid_argument("check_reduced_chen: need s <= u <= t");
    return check_reduced_chen(reduced_lift(p, s, t, depth), reduced_lift(p, s, u, depth), reduced_lift(p, u, t, depth));
}

}  // namespace roughfunc
