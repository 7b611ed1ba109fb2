// SPDX-License-Identifier: MIT
// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "roughfunc/path_generators.hpp"
#include "roughfunc/rough_integrator.hpp"
#include "roughfunc/taylor_engine.hpp"

using namespace roughfunc;

namespace {

const SampledPath& brownian() {
    static const SampledPath p = [] {
        GeneratorSpec g;
        g.kind = PathKind::brownian;
        g.steps = std::size_t{1} << 14;
        g.seed = 1;
        return generate(g);
    }();
    return p;
}

const SampledPath& weierstrass() {
    static const SampledPath p = [] {
        GeneratorSpec g;
        g.kind = PathKind::weierstrass;
        g.alpha = 0.5;
        g.steps = std::size_t{1} << 12;
        return generate(g);
    }();
    return p;
}

const PointFunctional quartic(Profile::monomial(4), {1.0});

void BM_CompensatedSum(benchmark::State& state) {
    const auto part = dyadic_partition(0.0, 1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compensated_sum(quartic, brownian(), 2, part));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_CompensatedSumSerial(benchmark::State& state) {
    const auto part = dyadic_partition(0.0, 1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::compensated_sum(quartic, brownian(), 2, part));
}

void BM_HolderNorm(benchmark::State& state) {
    const auto budget = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(holder_norm(weierstrass(), 0.4, budget));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_HolderNormSerial(benchmark::State& state) {
    const auto budget = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial::holder_norm(weierstrass(), 0.4, budget));
}

void BM_Scaling(benchmark::State& state) {
    const PointFunctional cube(Profile::polynomial({0, 1, -0.5, 1}), {1.0});
    ScalingOptions opt;
    opt.anchors = 16;
    opt.quadrature = 4;
    for (auto _ : state)
        benchmark::DoNotOptimize(scaling_experiment(cube, weierstrass(), 0.5, 2, 1, geometric_ladder(3, 7), opt));
}

void BM_ScalingSerial(benchmark::State& state) {
    const PointFunctional cube(Profile::polynomial({0, 1, -0.5, 1}), {1.0});
    ScalingOptions opt;
    opt.anchors = 16;
    opt.quadrature = 4;
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::scaling_experiment(cube, weierstrass(), 0.5, 2, 1, geometric_ladder(3, 7), opt));
}

}  // namespace

BENCHMARK(BM_CompensatedSum)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CompensatedSumSerial)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);
// 1000: reduced span set; 1 << 24: every pair
BENCHMARK(BM_HolderNorm)->Arg(1000)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HolderNormSerial)->Arg(1000)->Arg(1 << 24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scaling)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScalingSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
