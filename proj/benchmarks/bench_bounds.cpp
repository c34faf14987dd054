#include <benchmark/benchmark.h>

#include "uncbound/bounds.hpp"
#include "uncbound/oracle.hpp"
#include "uncbound/special_fn.hpp"

using namespace uncbound;

static void BM_log_gamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma(x));
        x = x < 1e6 ? x * 1.37 : 0.5;
    }
}
BENCHMARK(BM_log_gamma);

static void BM_holder_sum_exact(benchmark::State& state) {
    const double M = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(holder_sum_exact(M, Dimension{3}, 2.5));
}
BENCHMARK(BM_holder_sum_exact)->Arg(10)->Arg(1000)->Arg(1000000);

static void BM_purity_bound(benchmark::State& state) {
    const double mu = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(purity_bound(mu, Dimension{2}, PurityOrder::finite(3.0)));
}
BENCHMARK(BM_purity_bound)->Arg(1)->Arg(4)->Arg(8);

static void BM_entropy_bound(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(entropy_bound(12.0, Dimension{3}));
}
BENCHMARK(BM_entropy_bound);

static void BM_brute_force(benchmark::State& state) {
    oracle::OracleConfig cfg;
    cfg.trials = 3;
    for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_purity_bound(0.2, Dimension{2}, 2.0, cfg));
}
BENCHMARK(BM_brute_force)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
