#include <benchmark/benchmark.h>

#include <vector>

#include "heatcontent/geometry.hpp"
#include "heatcontent/heat_content_nd.hpp"
#include "heatcontent/stable_kernel.hpp"
#include "heatcontent/subordinator.hpp"

using namespace heat;

static void BM_SubordinatorSample(benchmark::State& state) {
    const AlphaParam alpha(static_cast<double>(state.range(0)) / 10.0);
    RandomStream rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_subordinator(alpha, 1.0, rng).value);
}
BENCHMARK(BM_SubordinatorSample)->Arg(5)->Arg(10)->Arg(15);

static void BM_SubordinatorDensity(benchmark::State& state) {
    const AlphaParam alpha(1.5);
    double s = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(subordinator_density(alpha, 1.0, s).value);
        s = s < 100.0 ? s * 1.7 : 0.1;
    }
}
BENCHMARK(BM_SubordinatorDensity);

static void BM_KernelEval(benchmark::State& state) {
    const AlphaParam alpha(static_cast<double>(state.range(0)) / 10.0);
    double r = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_eval(alpha, 2, 1.0, r).value);
        r = r < 20.0 ? r * 1.9 : 0.05;
    }
}
BENCHMARK(BM_KernelEval)->Arg(5)->Arg(12)->Arg(18);

static void BM_HeatContentQuadrature(benchmark::State& state) {
    const AlphaParam alpha(static_cast<double>(state.range(0)) / 10.0);
    const auto disk = Domain::ball(2, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(heat_content_nd(alpha, disk, 1e-3, EstimateMethod::SubordinationQuadrature).value);
}
BENCHMARK(BM_HeatContentQuadrature)->Arg(5)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_PerimeterMonteCarlo(benchmark::State& state) {
    const auto disk = Domain::ball(2, 1.0);
    McBudget budget;
    budget.samples = static_cast<std::uint64_t>(state.range(0));
    budget.threads = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(fractional_perimeter(disk, 0.5, PerimeterMethod::MonteCarlo, budget).value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PerimeterMonteCarlo)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
