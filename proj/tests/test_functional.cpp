// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <random>

#include "roughfunc/functional.hpp"
#include "roughfunc/path_generators.hpp"

using namespace roughfunc;

namespace {

SampledPath identity_path(std::size_t steps = 64) {
    return SampledPath::from_function(1.0, steps, 1, [](double t) { return Point{t}; });
}

SampledPath smooth2(std::size_t steps = 256) {
    GeneratorSpec g;
    g.kind = PathKind::smooth_bv;
    g.dim = 2;
    g.steps = steps;
    return generate(g);
}

}  // namespace

TEST_SUITE("functional") {

TEST_CASE("profiles") {
    const auto p = Profile::polynomial({1.0, -2.0, 0.0, 3.0});
    CHECK(p.value(2.0) == 1.0 - 4.0 + 24.0);
    CHECK(p.derivative(1, 2.0) == -2.0 + 36.0);
    CHECK(p.derivative(3, 5.0) == 18.0);
    CHECK(p.derivative(4, 5.0) == 0.0);
    const auto s = Profile::sine(2.0, 0.5);
    CHECK(s.derivative(1, 0.3) == doctest::Approx(2.0 * std::cos(1.1)).epsilon(1e-15));
    CHECK(s.derivative(2, 0.3) == doctest::Approx(-4.0 * std::sin(1.1)).epsilon(1e-15));
    CHECK(s.derivative(4, 0.3) == doctest::Approx(16.0 * std::sin(1.1)).epsilon(1e-14));
    CHECK(Profile::monomial(2, 3.0).value(2.0) == 12.0);
    CHECK_THROWS(p.derivative(-1, 0.0));
}

TEST_CASE("example values") {
    const auto x = identity_path();
    const PathView v(x);
    CHECK(PointFunctional(Profile::monomial(2), {1.0}).eval(1.0, v) == 1.0);
    CHECK(RunningIntegralFunctional(Profile::monomial(1), {1.0}).eval(1.0, v) == doctest::Approx(0.5).epsilon(1e-15));
    const PathIntegralFunctional f3(Profile::monomial(1), Profile::monomial(1), {1.0}, {1.0});
    CHECK(f3.eval(1.0, v) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("space derivatives of the examples") {
    const auto x = identity_path();
    const PathView v(x);
    const PointFunctional f1(Profile::monomial(2), {1.0});
    CHECK(f1.space_derivative(1, 1.0, v)[0] == 2.0);
    CHECK(f1.space_derivative(2, 1.0, v)[0] == 2.0);
    CHECK(f1.space_derivative(3, 1.0, v)[0] == 0.0);
    CHECK(f1.space_derivative(0, 1.0, v)[0] == f1.eval(1.0, v));
    CHECK(f1.time_derivative(0.5, v) == 0.0);

    const RunningIntegralFunctional f2(Profile::monomial(2), {1.0});
    for (int k = 1; k <= 4; ++k) CHECK(f2.space_derivative(k, 0.7, v).norm() == 0.0);
    CHECK(f2.time_derivative(0.5, v) == doctest::Approx(0.25).epsilon(1e-15));

    const PointFunctional small(Profile::monomial(2), {1.0}, 2);
    CHECK_THROWS(small.space_derivative(3, 0.5, v));
}

TEST_CASE("ridge derivatives are symmetric and match phi^(k) c^(x)k") {
    const auto x = smooth2();
    const PointFunctional f1(Profile::sine(1.3, 0.2), {0.6, -0.8});
    const PathView v(x);
    const auto xt = x.eval(0.4);
    const double arg = 0.6 * xt[0] - 0.8 * xt[1];
    const auto d3 = f1.space_derivative(3, 0.4, v);
    const double c[2] = {0.6, -0.8};
    const auto expected = Profile::sine(1.3, 0.2).derivative(3, arg) * LevelTensor::power(c, 3);
    CHECK((d3 - expected).norm() <= 1e-15);
    CHECK(symmetry_defect(d3) <= 1e-15);
}

TEST_CASE("F3 time derivative") {
    const auto x = identity_path(128);
    const PathView v(x);
    // f(a, b) = sin(a) b, w = 1: DF = sin(X(t)) X(t).
    const PathIntegralFunctional f3(Profile::sine(), Profile::monomial(1), {1.0}, {1.0});
    CHECK(f3.time_derivative(0.5, v) == doctest::Approx(std::sin(0.5) * 0.5).epsilon(1e-14));
    const auto fd = fd_check_time(f3, 0.5, x, default_fd_steps());
    CHECK(fd.error_at(1e-4) <= 1e-6);
}

TEST_CASE("causality") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const auto a = smooth2();
    GeneratorSpec g;
    g.kind = PathKind::brownian;
    g.dim = 2;
    g.steps = 256;
    g.seed = 5;
    const auto b = generate(g);
    const PointFunctional f1(Profile::monomial(3), {1.0, 0.5});
    const RunningIntegralFunctional f2(Profile::sine(), {1.0, -1.0});
    const PathIntegralFunctional f3(Profile::sine(), Profile::polynomial({1, 0.5}), {0.3, 1.0}, {1.0, 0.5}, 1.0, 0.5);
    const CausalFunctional* fs[] = {&f1, &f2, &f3};
    int mismatches = 0;
    for (int probe = 0; probe < 100; ++probe) {
        const SampledPath& p = probe % 2 ? a : b;
        const double t = U(rng);
        const PathView full(p);
        const PathView stopped = full.stopped(t);
        for (const auto* F : fs)
            if (F->eval(t, full) != F->eval(t, stopped)) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("finite-difference checks") {
    const auto x = smooth2();
    const PointFunctional square(Profile::monomial(2), {1.0, 0.0});
    CHECK(fd_check_space(square, 1, 0.5, x, default_fd_steps()).error_at(1e-4) <= 1e-10);

    const RunningIntegralFunctional f2(Profile::sine(), {1.0, 1.0});
    const auto f2k1 = fd_check_space(f2, 1, 0.5, x, default_fd_steps());
    CHECK(f2k1.max_error <= 1e-15);
    CHECK(f2k1.exact);
    const auto f1t = fd_check_time(square, 0.5, x, default_fd_steps());
    CHECK(f1t.max_error == 0.0);

    // f(a, b) = sin(a) b: central differences converge at order 2.
    const PathIntegralFunctional f3(Profile::sine(), Profile::monomial(1), {1.0, 0.0}, {1.0, 1.0});
    const auto f3k1 = fd_check_space(f3, 1, 0.6, x, default_fd_steps());
    CHECK(f3k1.error_at(1e-4) <= 1e-6);
    CHECK(f3k1.observed_order == doctest::Approx(2.0).epsilon(0.1));
    const auto f3k2 = fd_check_space(f3, 2, 0.6, x, default_fd_steps());
    CHECK(f3k2.error_at(1e-4) <= 1e-4);

    const auto line = identity_path(128);
    const RunningIntegralFunctional sq(Profile::monomial(2), {1.0});
    const auto dt = fd_check_time(sq, 0.5, line, {1e-2, 1e-3, 1e-4});
    CHECK(dt.error_at(1e-4) <= 1e-6);
    // F(t + h, X_t) is linear in h here, so the stencil is exact up to round-off.
    CHECK((dt.exact || dt.observed_order >= 1.0));
}

TEST_CASE("Lipschitz ratio") {
    const auto x = identity_path(64);
    const auto y = SampledPath::from_function(1.0, 64, 1, [](double t) { return Point{t + 0.01}; });
    const PointFunctional f1(Profile::monomial(2), {1.0});
    const double r = lipschitz_ratio(f1, 0.5, x, y);
    // |(0.51)^2 - 0.5^2| / 0.01 = 1.01
    CHECK(r == doctest::Approx(1.01).epsilon(1e-10));
    CHECK(lipschitz_ratio(f1, 0.5, x, x) == 0.0);
}

}  // TEST_SUITE
