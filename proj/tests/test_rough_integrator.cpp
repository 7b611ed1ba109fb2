// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <random>

#include "roughfunc/path_generators.hpp"
#include "roughfunc/rough_integrator.hpp"
#include "roughfunc/signature.hpp"

using namespace roughfunc;

namespace {

SampledPath path_of(PathKind kind, std::size_t steps, std::uint64_t seed = 1, int dim = 1, double alpha = 0.5) {
    GeneratorSpec g;
    g.kind = kind;
    g.steps = steps;
    g.seed = seed;
    g.dim = dim;
    g.alpha = alpha;
    return generate(g);
}

// Xi by direct summation over words, independent of contract/inner_product.
double xi_by_words(const CausalFunctional& F, const SampledPath& p, int n, double s, double t) {
    const PathView v = PathView(p).stopped(s);
    const auto xs = p.eval(s), xt = p.eval(t);
    double acc = 0.0, fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        const auto grad = F.space_derivative(k, s, v);
        for (std::size_t idx = 0; idx < grad.size(); ++idx) {
            const Word w = Word::from_index(idx, k, p.dim());
            double prod = 1.0;
            for (std::size_t j = 0; j < w.size(); ++j) prod *= xt[w[j]] - xs[w[j]];
            acc += grad[idx] * prod / fact;
        }
    }
    return acc;
}

}  // namespace

TEST_SUITE("rough_integrator") {

TEST_CASE("compensated increments") {
    const auto p = path_of(PathKind::brownian, 512, 7);
    const PointFunctional square(Profile::monomial(2), {1.0});
    const double s = 0.2, t = 0.45;
    const double xs = p.eval(s)[0], dx = p.eval(t)[0] - xs;
    CHECK(xi(square, p, 1, s, t).value == doctest::Approx(2 * xs * dx).epsilon(1e-14));
    CHECK(xi(square, p, 2, s, t).value == doctest::Approx(2 * xs * dx + dx * dx).epsilon(1e-14));
    const RunningIntegralFunctional f2(Profile::sine(), {1.0});
    for (int n = 1; n <= 4; ++n) CHECK(xi(f2, p, n, s, t).value == 0.0);

    const auto q = path_of(PathKind::fbm, 256, 9, 3);
    const PathIntegralFunctional f3(Profile::sine(), Profile::polynomial({1, 0.5}), {0.3, 1.0, -0.5}, {1, 1, 1});
    CHECK(xi(f3, q, 3, 0.1, 0.7).value == doctest::Approx(xi_by_words(f3, q, 3, 0.1, 0.7)).epsilon(1e-12));
}

TEST_CASE("controlled remainder at the top level") {
    const auto p = path_of(PathKind::brownian, 512, 8);
    const PointFunctional cube(Profile::monomial(3), {1.0});
    const double s = 0.3, t = 0.6;
    const double xs = p.eval(s)[0], xt = p.eval(t)[0];
    // R^{X,n} = f^(n)(X(t)) - f^(n)(X(s))
    CHECK(controlled_remainder(cube, p, 2, 2, s, t)[0] == doctest::Approx(6 * xt - 6 * xs).epsilon(1e-13));
    // R^{X,1} with n = 2: f'(X(t)) - f'(X(s)) - f''(X(s)) dX = 3 dX^2
    CHECK(controlled_remainder(cube, p, 2, 1, s, t)[0] == doctest::Approx(3 * (xt - xs) * (xt - xs)).epsilon(1e-12));
    CHECK_THROWS(controlled_remainder(cube, p, 2, 3, s, t));
}

TEST_CASE("coherence identity") {
    const auto b = path_of(PathKind::brownian, 1024, 10);
    const PointFunctional cube(Profile::monomial(3), {1.0});
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double s = U(rng), t = U(rng);
        if (s > t) std::swap(s, t);
        worst = std::max(worst, coherence_defect(cube, b, 2, s, s + U(rng) * (t - s), t));
    }
    CHECK(worst <= 1e-12);
    CHECK(coherence_defect(cube, b, 2, 0.2, 0.2, 0.7) == 0.0);
    CHECK(coherence_defect(cube, b, 2, 0.2, 0.7, 0.7) == 0.0);

    const auto w = path_of(PathKind::weierstrass, 1024, 0, 2, 0.4);
    const PathIntegralFunctional f3(Profile::sine(), Profile::polynomial({1, 0.5}), {0.3, 1.0}, {1.0, 0.5}, 1.0, 0.5);
    worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        double s = U(rng), t = U(rng);
        if (s > t) std::swap(s, t);
        worst = std::max(worst, coherence_defect(f3, w, 3, s, s + U(rng) * (t - s), t));
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("compensated sums") {
    GeneratorSpec g;
    g.kind = PathKind::smooth_bv;
    g.steps = 4096;
    const auto x = generate(g);
    const PointFunctional square(Profile::monomial(2), {1.0});
    CHECK(compensated_sum(square, x, 2, Partition({0.0, 1.0})) == xi(square, x, 2, 0.0, 1.0).value);
    const RunningIntegralFunctional f2(Profile::sine(), {1.0});
    CHECK(compensated_sum(f2, x, 2, dyadic_partition(0.0, 1.0, 6)) == 0.0);

    const double target = std::sin(1.0) * std::sin(1.0);
    CHECK(std::abs(compensated_sum(square, x, 2, dyadic_partition(0.0, 1.0, 10)) - target) <= 1e-6);
    CHECK_THROWS(compensated_sum(square, x, 2, Partition({0.0, 0.5})));

    const auto b = path_of(PathKind::brownian, 2048, 12);
    const PointFunctional quartic(Profile::monomial(4), {1.0});
    const auto part = dyadic_partition(0.0, 1.0, 9);
    const double par = compensated_sum(quartic, b, 2, part);
    const double ser = serial::compensated_sum(quartic, b, 2, part);
    CHECK(par == doctest::Approx(ser).epsilon(1e-13));
}

TEST_CASE("pairwise summation") {
    CHECK(pairwise_sum({}) == 0.0);
    CHECK(pairwise_sum({1.5}) == 1.5);
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    CHECK(pairwise_sum(v) == 499500.0);
}

TEST_CASE("rough integral") {
    GeneratorSpec g;
    g.kind = PathKind::smooth_bv;
    g.steps = 16384;
    const auto x = generate(g);
    const PointFunctional square(Profile::monomial(2), {1.0});
    const auto r = rough_integral(square, x, 2, 12);
    CHECK(r.dyadic_trace.size() == 13);
    CHECK(r.successive_diffs.size() == 12);
    CHECK(std::abs(r.value - std::sin(1.0) * std::sin(1.0)) <= 1e-6);
    CHECK(!r.non_convergent);
    CHECK(!r.extrapolated);

    const RunningIntegralFunctional f2(Profile::sine(), {1.0});
    const auto z = rough_integral(f2, x, 2, 6);
    CHECK(z.value == 0.0);
    for (double d : z.successive_diffs) CHECK(d == 0.0);
    CHECK(std::isnan(z.fitted_rate));

    CHECK(max_dyadic_level(x) == 12);
    CHECK_THROWS(rough_integral(square, x, 2, 13));

    // the quadratic telescopes exactly, so extrapolate a cubic instead
    const PointFunctional cube(Profile::monomial(3), {1.0});
    const double cubed = std::pow(std::sin(1.0), 3);
    const auto rr = rough_integral(cube, x, 1, 8, {true});
    REQUIRE(rr.extrapolated);
    CHECK(std::abs(*rr.extrapolated - cubed) < std::abs(rr.value - cubed));
}

TEST_CASE("sewing rate on a Brownian sample") {
    const auto b = path_of(PathKind::brownian, 16384, 2026);
    const PointFunctional cube(Profile::monomial(3), {1.0});
    const auto r = rough_integral(cube, b, 2, 12);
    CHECK(sewing_exponent(0.45, 2) == doctest::Approx(1.1025));
    CHECK(r.fitted_rate >= sewing_exponent(0.45, 2) - 1.0);
}

TEST_CASE("remainder Hoelder fits") {
    const auto w = path_of(PathKind::weierstrass, 4096, 0, 1, 0.5);
    const PointFunctional cube(Profile::polynomial({0, 1, -0.5, 1}), {1.0});
    const auto top = remainder_holder_fit(cube, w, 0.5, 2, 2, 20000);
    CHECK(top.predicted_exponent == doctest::Approx(0.5));
    CHECK(top.fitted_exponent >= 0.5 - 0.15);
    CHECK(top.pass);

    const auto k1 = remainder_holder_fit(cube, w, 0.5, 2, 1, 20000);
    CHECK(k1.predicted_exponent == doctest::Approx(0.75));
    CHECK(k1.fitted_exponent >= 0.75 - 0.15);
    CHECK(std::isfinite(k1.holder.value));

    const RunningIntegralFunctional f2(Profile::sine(), {1.0});
    const auto zero = remainder_holder_fit(f2, w, 0.5, 2, 1, 20000);
    CHECK(zero.degenerate);
    CHECK(std::isnan(zero.fitted_exponent));
}

TEST_CASE("Ito residual") {
    GeneratorSpec g;
    g.kind = PathKind::smooth_bv;
    g.steps = 16384;
    const auto x = generate(g);
    const PointFunctional square(Profile::monomial(2), {1.0});
    const auto bv = ito_residual(square, x, 2, 4, 12);
    CHECK(bv.lhs == doctest::Approx(std::sin(1.0) * std::sin(1.0)).epsilon(1e-14));
    CHECK(std::abs(bv.residual) <= 1e-6);

    const RunningIntegralFunctional f2(Profile::sine(2.0), {1.0});
    const auto pure = ito_residual(f2, x, 2, 4, 8);
    CHECK(std::abs(pure.residual) <= 1e-8);
    CHECK(pure.integral.value == 0.0);

    const PointFunctional short_f(Profile::monomial(4), {1.0}, 2);
    CHECK(ito_residual(short_f, x, 2, 4, 6).order_warning);

    const auto b = path_of(PathKind::brownian, 16384, 20260917);
    const PointFunctional quartic(Profile::monomial(4), {1.0});
    const auto rough = ito_residual(quartic, b, 2, 4, 12);
    CHECK(rough.last_diff > 0.0);
    CHECK(std::abs(rough.residual) <= 5.0 * rough.last_diff);
}

}  // TEST_SUITE
