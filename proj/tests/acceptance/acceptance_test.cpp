// SPDX-License-Identifier: MIT
// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance_test <path-to-roughfunc-cli> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "roughfunc/functional.hpp"
#include "roughfunc/path_generators.hpp"
#include "roughfunc/rng.hpp"
#include "roughfunc/rough_integrator.hpp"
#include "roughfunc/signature.hpp"
#include "roughfunc/taylor_engine.hpp"
#include "roughfunc/tensor_algebra.hpp"

using namespace roughfunc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 424242;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [violated]");
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- oracles

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::vector<std::vector<int>> all_words(int dim, int length) {
    std::vector<std::vector<int>> out;
    std::vector<int> w(static_cast<std::size_t>(length), 0);
    std::size_t total = 1;
    for (int i = 0; i < length; ++i) total *= static_cast<std::size_t>(dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (int i = length - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::size_t>(dim));
            r /= static_cast<std::size_t>(dim);
        }
        out.push_back(w);
    }
    return out;
}

// Left-point nested Riemann sum of <S_{0,T}, e_w>, one pass over the grid.
double nested_riemann(const SampledPath& p, const std::vector<int>& word, std::size_t subdivisions) {
    const std::size_t k = word.size();
    std::vector<double> acc(k + 1, 0.0);
    acc[0] = 1.0;
    const double T = p.horizon();
    auto prev = p.eval(0.0);
    for (std::size_t j = 1; j <= subdivisions; ++j) {
        const auto cur = p.eval(T * static_cast<double>(j) / static_cast<double>(subdivisions));
        for (std::size_t m = k; m >= 1; --m)
            acc[m] += acc[m - 1] * (cur[static_cast<std::size_t>(word[m - 1])] - prev[static_cast<std::size_t>(word[m - 1])]);
        prev = cur;
    }
    return acc[k];
}

// Coefficient of (a^{(x)j}/j!) (x) (b^{(x)(k-j)}/(k-j)!) symmetrised, at word w.
double sym_split_coefficient(const std::vector<int>& w, std::size_t j, const std::vector<double>& a,
                             const std::vector<double>& b) {
    std::vector<std::size_t> perm(w.size());
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0, count = 0.0;
    do {
        double prod = 1.0;
        for (std::size_t m = 0; m < w.size(); ++m)
            prod *= (m < j ? a : b)[static_cast<std::size_t>(w[perm[m]])];
        total += prod;
        count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / count / (factorial(static_cast<int>(j)) * factorial(static_cast<int>(w.size() - j)));
}

double word_power(const std::vector<int>& w, const std::vector<double>& delta) {
    double prod = 1.0;
    for (int letter : w) prod *= delta[static_cast<std::size_t>(letter)];
    return prod / factorial(static_cast<int>(w.size()));
}

std::vector<double> increment(const SampledPath& p, double s, double t) {
    const auto a = p.eval(s), b = p.eval(t);
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = b[i] - a[i];
    return d;
}

// <T, delta^{(x)k}/k!> by word enumeration.
double pair_with_power(const LevelTensor& t, const std::vector<double>& delta) {
    double acc = 0.0;
    const int k = t.order();
    if (k == 0) return t[0];
    const auto words = all_words(t.dim(), k);
    for (std::size_t idx = 0; idx < words.size(); ++idx) acc += t[idx] * word_power(words[idx], delta);
    return acc;
}

// Xi_{s,t} and R^{X,k}_{s,u} evaluated from the analytic derivatives only.
double xi_oracle(const CausalFunctional& F, const SampledPath& p, int n, double s, double t) {
    const PathView v = PathView(p).stopped(s);
    const auto delta = increment(p, s, t);
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += pair_with_power(F.space_derivative(k, s, v), delta);
    return acc;
}

// <R^{X,k}_{s,u}, X^k_{u,t}>; the contraction against the lift is unrolled by words.
double remainder_pairing(const CausalFunctional& F, const SampledPath& p, int n, int k, double s, double u, double t) {
    const PathView vs = PathView(p).stopped(s), vu = PathView(p).stopped(u);
    const auto dsu = increment(p, s, u), dut = increment(p, u, t);
    const int d = p.dim();
    const auto words_k = all_words(d, k);
    std::vector<double> r(words_k.size(), 0.0);
    const auto top = F.space_derivative(k, u, vu);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = top[i];
    for (int l = k; l <= n; ++l) {
        const auto g = F.space_derivative(l, s, vs);
        const auto words_l = all_words(d, l);
        for (std::size_t idx = 0; idx < words_l.size(); ++idx) {
            // word = head (length l-k, paired with the lift) + tail (length k, free)
            const std::vector<int> head(words_l[idx].begin(), words_l[idx].begin() + (l - k));
            std::size_t tail = 0;
            for (std::size_t m = static_cast<std::size_t>(l - k); m < words_l[idx].size(); ++m)
                tail = tail * static_cast<std::size_t>(d) + static_cast<std::size_t>(words_l[idx][m]);
            r[tail] -= g[idx] * word_power(head, dsu);
        }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r[i] * word_power(words_k[i], dut);
    return acc;
}

// Ordinary least-squares slope.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

int scan_order(double alpha, double base) {
    for (int n = 1;; ++n)
        if (base * alpha + (n - 1) * alpha * alpha > 1.0) return n;
}

GeneratorSpec spec(PathKind kind, int dim, std::size_t steps, std::uint64_t stream) {
    GeneratorSpec g;
    g.kind = kind;
    g.dim = dim;
    g.steps = steps;
    g.seed = derive_seed(kSeed, stream);
    return g;
}

// Ridge functionals used throughout.
PointFunctional f1_cubic(int d) {
    std::vector<double> c(static_cast<std::size_t>(d), 1.0);
    if (d > 1) c[1] = 0.5;
    return PointFunctional(Profile::polynomial({0.0, 1.0, -0.5, 1.0}), c);
}
RunningIntegralFunctional f2_sine(int d) { return RunningIntegralFunctional(Profile::sine(), std::vector<double>(static_cast<std::size_t>(d), 1.0)); }
PathIntegralFunctional f3_mixed(int d) {
    std::vector<double> c(static_cast<std::size_t>(d), 1.0), e(static_cast<std::size_t>(d), 1.0);
    c[0] = 0.3;
    return PathIntegralFunctional(Profile::sine(), Profile::polynomial({1.0, 0.5}), c, e, 1.0, 0.5);
}

// ---------------------------------------------------------------- criteria

Verdict criterion1() {
    std::mt19937_64 rng(derive_seed(kSeed, 1));
    double shuffle = 0.0, chen = 0.0, sym = 0.0;
    constexpr int depth = 5;
    for (int path = 0; path < 50; ++path) {
        const int d = 1 + path % 3;
        const auto p = random_piecewise_linear(rng, d, 3 + static_cast<std::size_t>(path % 5));
        const auto S = path_signature(p, 0.0, 1.0, depth);
        for (int lw = 1; lw < depth; ++lw)
            for (int lu = 1; lw + lu <= depth; ++lu)
                for (const auto& w : all_words(d, lw))
                    for (const auto& u : all_words(d, lu)) {
                        const Word ww(w, d), uu(u, d);
                        shuffle = std::max(shuffle, std::abs(S.pair(shuffle_words(ww, uu)) - S.coefficient(ww) * S.coefficient(uu)));
                    }
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double s = U(rng), t = U(rng);
        if (s > t) std::swap(s, t);
        const double u = s + U(rng) * (t - s);
        chen = std::max(chen, series_distance(truncated_product(path_signature(p, s, u, depth), path_signature(p, u, t, depth)),
                                              path_signature(p, s, t, depth)));
        const auto delta = increment(p, s, t);
        const auto St = path_signature(p, s, t, depth);
        for (int k = 1; k <= depth; ++k) {
            const auto projected = sym_project(St.level(k));
            const auto words = all_words(d, k);
            for (std::size_t idx = 0; idx < words.size(); ++idx)
                sym = std::max(sym, std::abs(projected[idx] - word_power(words[idx], delta)));
        }
    }
    Verdict v;
    v.require(shuffle <= 1e-10, "shuffle " + num(shuffle) + " <= 1e-10");
    v.require(chen <= 1e-11, "chen " + num(chen) + " <= 1e-11");
    v.require(sym <= 1e-10, "sym " + num(sym) + " <= 1e-10");
    return v;
}

Verdict criterion2() {
    std::mt19937_64 rng(derive_seed(kSeed, 2));
    double worst = 0.0;
    for (int path = 0; path < 20; ++path) {
        const int d = 1 + path % 3;
        const auto p = random_piecewise_linear(rng, d, 5);
        const auto S = path_signature(p, 0.0, 1.0, 3);
        for (int k = 1; k <= 3; ++k)
            for (const auto& w : all_words(d, k))
                worst = std::max(worst, std::abs(nested_riemann(p, w, 10000) - S.coefficient(Word(w, d))));
    }
    Verdict v;
    v.require(worst <= 1e-3, "max |chen - riemann| " + num(worst) + " <= 1e-3");
    return v;
}

Verdict criterion3() {
    std::mt19937_64 rng(derive_seed(kSeed, 3));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<SampledPath> paths;
    for (int d = 1; d <= 3; ++d) paths.push_back(generate(spec(PathKind::brownian, d, 1024, 30 + static_cast<std::uint64_t>(d))));
    double worst = 0.0, worst_lib = 0.0;
    for (int probe = 0; probe < 100; ++probe) {
        const auto& p = paths[static_cast<std::size_t>(probe) % paths.size()];
        const int n = 1 + probe % 4;
        double s = U(rng), t = U(rng);
        if (s > t) std::swap(s, t);
        const double u = s + U(rng) * (t - s);
        const auto a = increment(p, s, u), b = increment(p, u, t), ab = increment(p, s, t);
        for (int k = 1; k <= n; ++k)
            for (const auto& w : all_words(p.dim(), k)) {
                double rhs = 0.0;
                for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j) rhs += sym_split_coefficient(w, j, a, b);
                worst = std::max(worst, std::abs(word_power(w, ab) - rhs));
            }
        worst_lib = std::max(worst_lib, check_reduced_chen(p, s, u, t, n));
    }
    Verdict v;
    v.require(worst <= 1e-12, "oracle defect " + num(worst) + " <= 1e-12");
    v.require(worst_lib <= 1e-12, "library defect " + num(worst_lib) + " <= 1e-12");
    return v;
}

Verdict criterion4() {
    GeneratorSpec g = spec(PathKind::smooth_bv, 2, 256, 4);
    const auto p = generate(g);
    const auto a = f1_cubic(2);
    const auto b = f2_sine(2);
    const auto c = f3_mixed(2);
    const CausalFunctional* fs[] = {&a, &b, &c};
    const std::vector<double> steps = {1e-2, 1e-3, 1e-4};
    double err1 = 0.0, err2 = 0.0, min_order = 99.0;
    // Order from the h = 1e-2 -> 1e-3 pair; a pair whose larger error is within
    // 1e3 eps |F| / h^k of zero means the stencil is exact for this F.
    std::string worst_case;
    auto order = [&](double e_big, double e_small, int k, double scale, const std::string& label) {
        const double floor = 1e3 * 2.220446049250313e-16 * scale / std::pow(steps[0], k);
        if (e_big <= floor) return 99.0;
        const double o = std::log10(e_big / std::max(e_small, 1e-300));
        if (o < min_order) worst_case = label;
        return o;
    };
    for (const auto* F : fs)
        for (double t : {0.25, 0.5, 0.75}) {
            const int d = 2;
            std::vector<double> e1(steps.size()), e2(steps.size()), et(steps.size());
            const auto g1 = F->space_derivative(1, t, PathView(p));
            const auto g2 = F->space_derivative(2, t, PathView(p));
            const double dt = F->time_derivative(t, PathView(p));
            for (std::size_t si = 0; si < steps.size(); ++si) {
                const double h = steps[si];
                auto bump = [&](double hi, double hj, int i, int j) {
                    Point v(static_cast<std::size_t>(d), 0.0);
                    v[static_cast<std::size_t>(i)] += hi;
                    v[static_cast<std::size_t>(j)] += hj;
                    return F->eval(t, stop_and_bump(p, t, v));
                };
                for (int i = 0; i < d; ++i) {
                    const double fd = (bump(h, 0, i, i) - bump(-h, 0, i, i)) / (2 * h);
                    e1[si] = std::max(e1[si], std::abs(fd - g1[static_cast<std::size_t>(i)]));
                    for (int j = 0; j < d; ++j) {
                        const double fd2 = (bump(h, h, i, j) - bump(h, -h, i, j) - bump(-h, h, i, j) + bump(-h, -h, i, j)) / (4 * h * h);
                        e2[si] = std::max(e2[si], std::abs(fd2 - g2[static_cast<std::size_t>(i * d + j)]));
                    }
                }
                const PathView frozen = PathView(p).stopped(t);
                const double f0 = F->eval(t, frozen);
                const double fdt = (4 * (F->eval(t + h, frozen) - f0) - (F->eval(t + 2 * h, frozen) - f0)) / (2 * h);
                et[si] = std::abs(fdt - dt);
            }
            err1 = std::max({err1, e1[2], et[2]});
            err2 = std::max(err2, e2[2]);
            const double scale = 1.0 + std::abs(F->eval(t, PathView(p)));
            const std::string at = F->name() + "@" + num(t);
            min_order = std::min(min_order, order(e1[0], e1[1], 1, scale, at + " k=1"));
            min_order = std::min(min_order, order(e2[0], e2[1], 2, scale, at + " k=2"));
            min_order = std::min(min_order, order(et[0], et[1], 1, scale, at + " DF"));
        }
    Verdict v;
    v.require(err1 <= 1e-6, "order-1 error@1e-4 " + num(err1) + " <= 1e-6");
    v.require(err2 <= 1e-4, "order-2 error@1e-4 " + num(err2) + " <= 1e-4");
    v.require(min_order >= 1.5, "min observed order " + num(min_order) + (worst_case.empty() ? "" : " (" + worst_case + ")") + " >= 1.5");
    return v;
}

Verdict criterion5() {
    const auto p = generate(spec(PathKind::smooth_bv, 2, 256, 5));
    const auto a = f1_cubic(2);
    const auto c = f3_mixed(2);
    std::mt19937_64 rng(derive_seed(kSeed, 5));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0, lhs_gap = 0.0;
    for (const CausalFunctional* F : {static_cast<const CausalFunctional*>(&a), static_cast<const CausalFunctional*>(&c)})
        for (int i = 0; i < 20; ++i) {
            double s = U(rng), t = U(rng);
            if (s > t) std::swap(s, t);
            const auto r = taylor_residual(*F, p, s, t, 3, 64);
            worst = std::max(worst, std::abs(r.residual));
            const PathView full(p);
            lhs_gap = std::max(lhs_gap, std::abs(r.lhs - (F->eval(t, full) - F->eval(s, full))));
        }
    Verdict v;
    v.require(worst <= 1e-8, "max residual " + num(worst) + " <= 1e-8");
    v.require(lhs_gap <= 1e-14, "lhs vs direct evaluation " + num(lhs_gap));
    return v;
}

Verdict criterion6() {
    const auto f = f1_cubic(1);
    const auto ladder = geometric_ladder(3, 9);
    Verdict v;
    for (double alpha : {0.3, 0.5, 0.7}) {
        GeneratorSpec g;
        g.kind = PathKind::weierstrass;
        g.alpha = alpha;
        g.steps = std::size_t{1} << 14;
        const auto p = generate(g);
        for (int l : {0, 1}) {
            const int n = std::max(scan_order(alpha, 2.0), l + 1);
            const double predicted = std::min({alpha + (n - 1) * alpha * alpha, 1 + alpha, (l + 1) * alpha});
            ScalingOptions opt;
            opt.seed = derive_seed(kSeed, 600 + static_cast<std::uint64_t>(10 * alpha + l));
            const auto r = scaling_experiment(f, p, alpha, n, l, ladder, opt);
            std::vector<double> lx, ly;
            for (std::size_t i = 0; i < ladder.size(); ++i) {
                lx.push_back(std::log(ladder[i]));
                ly.push_back(std::log(r.max_defects[i]));
            }
            const double slope = least_squares_slope(lx, ly);
            char label[64];
            std::snprintf(label, sizeof label, "a=%.1f l=%d", alpha, l);
            v.require(slope >= predicted - kSlopeTolerance,
                      std::string(label) + " slope " + num(slope) + " >= " + num(predicted - kSlopeTolerance));
        }
    }
    return v;
}

Verdict criterion7() {
    int mismatches = 0, gap_violations = 0;
    for (int i = 1; i < 1000; ++i) {
        const double a = i * 1e-3;
        if (choose_n(a) != scan_order(a, 2.0) || choose_n_tilde(a) != scan_order(a, 1.0)) ++mismatches;
        if (choose_n_tilde(a) < choose_n(a) + 1) ++gap_violations;
    }
    // n~ = 4 exactly when alpha + 2 alpha^2 <= 1 < alpha + 3 alpha^2, i.e. alpha in (0.4343.., 0.5].
    int brownian = 0;
    for (int i = 435; i < 500; ++i)
        if (choose_n(i * 1e-3) != 2 || choose_n_tilde(i * 1e-3) != 4) ++brownian;
    Verdict v;
    v.require(mismatches == 0, "scan mismatches " + std::to_string(mismatches));
    v.require(gap_violations == 0, "n~ < n+1 cases " + std::to_string(gap_violations));
    v.require(brownian == 0, "Brownian-regime (n, n~) != (2, 4) cases " + std::to_string(brownian));
    return v;
}

Verdict criterion8() {
    std::vector<SampledPath> paths;
    paths.push_back(generate(spec(PathKind::brownian, 1, 1024, 80)));
    GeneratorSpec w = spec(PathKind::weierstrass, 1, 1024, 81);
    w.alpha = 0.4;
    paths.push_back(generate(w));
    paths.push_back(generate(spec(PathKind::smooth_bv, 2, 256, 82)));
    GeneratorSpec f = spec(PathKind::fbm, 2, 1024, 83);
    f.hurst = 0.3;
    paths.push_back(generate(f));
    std::mt19937_64 rng(derive_seed(kSeed, 8));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0, worst_lib = 0.0;
    for (int probe = 0; probe < 500; ++probe) {
        const auto& p = paths[static_cast<std::size_t>(probe) % paths.size()];
        const int d = p.dim();
        const auto a = f1_cubic(d);
        const auto b = f2_sine(d);
        const auto c = f3_mixed(d);
        const CausalFunctional* F = probe / 4 % 3 == 0 ? static_cast<const CausalFunctional*>(&a)
                                    : probe / 4 % 3 == 1 ? static_cast<const CausalFunctional*>(&b)
                                                         : static_cast<const CausalFunctional*>(&c);
        const int n = 1 + probe / 12 % 4;
        double s = U(rng), t = U(rng);
        if (s > t) std::swap(s, t);
        const double u = s + U(rng) * (t - s);
        const double lhs = xi_oracle(*F, p, n, s, t) - xi_oracle(*F, p, n, s, u) - xi_oracle(*F, p, n, u, t);
        double rhs = 0.0;
        for (int k = 1; k <= n; ++k) rhs -= remainder_pairing(*F, p, n, k, s, u, t);
        worst = std::max(worst, std::abs(lhs - rhs));
        worst_lib = std::max(worst_lib, coherence_defect(*F, p, n, s, u, t));
    }
    Verdict v;
    v.require(worst <= 1e-11, "oracle defect " + num(worst) + " <= 1e-11");
    v.require(worst_lib <= 1e-11, "library defect " + num(worst_lib) + " <= 1e-11");
    return v;
}

struct BrownianSetup {
    SampledPath path;
    PointFunctional quartic;
    IntegralResult integral;
};

BrownianSetup& brownian_setup() {
    static BrownianSetup setup = [] {
        auto p = generate(spec(PathKind::brownian, 1, std::size_t{1} << 14, 9));
        PointFunctional q(Profile::monomial(4), {1.0});
        auto r = rough_integral(q, p, 2, 12);
        return BrownianSetup{std::move(p), std::move(q), std::move(r)};
    }();
    return setup;
}

Verdict criterion9() {
    const auto& r = brownian_setup().integral;
    std::vector<double> m, logd;
    for (std::size_t i = 1; i < r.dyadic_trace.size(); ++i) {
        const double d = std::abs(r.dyadic_trace[i] - r.dyadic_trace[i - 1]);
        m.push_back(static_cast<double>(i - 1));
        logd.push_back(std::log2(d));
    }
    const double rate = -least_squares_slope(m, logd);
    const double alpha = 0.45;
    const double theta = 2 * alpha + alpha * alpha;
    Verdict v;
    v.require(r.dyadic_trace.size() == 13, "levels 0..12");
    v.require(rate >= theta - 1 - 0.1, "rate " + num(rate) + " >= " + num(theta - 1 - 0.1));
    return v;
}

Verdict criterion10() {
    Verdict v;
    {
        const auto x = SampledPath::from_function(1.0, std::size_t{1} << 14, 1, [](double t) { return Point{std::sin(t)}; });
        const PointFunctional quadratic(Profile::monomial(2), {1.0});
        const auto r = ito_residual(quadratic, x, 2, 4, 12);
        const double target = std::sin(1.0) * std::sin(1.0);
        v.require(std::abs(r.time_integral + r.integral.value - target) <= 1e-6,
                  "BV |int - sin^2(1)| " + num(std::abs(r.time_integral + r.integral.value - target)) + " <= 1e-6");
    }
    {
        auto& b = brownian_setup();
        const PathView full(b.path);
        const double lhs = b.quartic.eval(1.0, full) - b.quartic.eval(0.0, full);
        const auto& tr = b.integral.dyadic_trace;
        const double last = std::abs(tr[tr.size() - 1] - tr[tr.size() - 2]);
        const double residual = std::abs(lhs - b.integral.value);  // DF = 0 for a point functional
        v.require(residual <= 5 * last, "rough residual " + num(residual) + " <= 5*" + num(last));
    }
    {
        const auto& p = brownian_setup().path;
        const RunningIntegralFunctional f2(Profile::sine(), {1.0});
        const auto r = ito_residual(f2, p, 2, 4, 12);
        v.require(std::abs(r.residual) <= 1e-8 && r.integral.value == 0.0,
                  "F2 residual " + num(std::abs(r.residual)) + " <= 1e-8");
    }
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Verdict criterion11(const std::string& cli, const fs::path& scratch) {
    Verdict v;
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    const fs::path cfg = scratch / "rough.json";
    std::ofstream(cfg) << R"({"seed": 11, "path": {"steps": 2048}, "levels": 9})" << '\n';
    struct Run {
        std::string sub;
        std::string args;
    };
    const Run runs[] = {{"rough-integral", "--config " + cfg.string()}, {"taylor-bv", "--seed 5"}, {"verify-algebra", ""}};
    for (const auto& run : runs) {
        std::vector<fs::path> dirs;
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path out = scratch / (run.sub + "_" + std::to_string(rep));
            const std::string cmd = "\"" + cli + "\" " + run.sub + " " + run.args + " --out \"" + out.string() + "\" > \"" +
                                    (scratch / (run.sub + ".log")).string() + "\" 2>&1";
            const int rc = std::system(cmd.c_str());
            v.require(rc == 0, run.sub + " run " + std::to_string(rep) + " exit " + std::to_string(rc));
            dirs.push_back(out);
        }
        std::size_t compared = 0, differing = 0;
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            const auto name = entry.path().filename();
            if (name == "manifest.json") continue;  // carries wall-clock timings
            ++compared;
            if (!fs::exists(dirs[1] / name) || slurp(entry.path()) != slurp(dirs[1] / name)) ++differing;
        }
        v.require(compared > 0 && differing == 0,
                  run.sub + " " + std::to_string(compared) + " files, " + std::to_string(differing) + " differ");
    }
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <roughfunc-cli> <scratch-dir>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path scratch = argv[2];

    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;  // 0: none stated
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "algebra identities", 10.0, criterion1},
        {2, "signature oracle", 60.0, criterion2},
        {3, "reduced Chen relation", 0.0, criterion3},
        {4, "derivative checks", 0.0, criterion4},
        {5, "BV Taylor identity", 0.0, criterion5},
        {6, "remainder scaling", 300.0, criterion6},
        {7, "exponent selectors", 0.0, criterion7},
        {8, "coherence identity", 0.0, criterion8},
        {9, "sewing convergence", 120.0, criterion9},
        {10, "Ito formula", 0.0, criterion10},
        {11, "determinism", 0.0, [&] { return criterion11(cli, scratch); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_seconds > 0.0) v.require(secs < c.limit_seconds, "runtime " + num(secs) + "s < " + num(c.limit_seconds) + "s");
        if (!v.pass) ++failures;
        std::printf("criterion %2d %s: %s (%s) [%.1fs]\n", c.id, v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
