#include <benchmark/benchmark.h>

#include "partsum/arith.hpp"
#include "partsum/asymptotics.hpp"
#include "partsum/floorsum.hpp"
#include "partsum/sieve.hpp"
#include "partsum/vaaler.hpp"

using namespace partsum;

static void BM_build_sieve(benchmark::State& state) {
    const uint64_t limit = (uint64_t)state.range(0);
    for (auto _ : state) {
        SieveTable t(limit);
        benchmark::DoNotOptimize(t.phi(limit));
    }
    state.SetItemsProcessed(state.iterations() * (int64_t)limit);
}
BENCHMARK(BM_build_sieve)->Arg(100000)->Arg(1000000)->Arg(10000000);

static void BM_checkpoint_scan(benchmark::State& state) {
    const uint64_t x = (uint64_t)state.range(0);
    std::vector<uint64_t> bps;
    for (uint64_t q = 1; q * q <= x; ++q) bps.push_back(x / (x / q));  // quotient values
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    for (auto _ : state) {
        auto c = checkpoint_scan(x, bps);
        benchmark::DoNotOptimize(c.chebyshev_psi.back());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t)x);
}
BENCHMARK(BM_checkpoint_scan)->Arg(1000000)->Arg(10000000);

static void BM_dirichlet_convolve(benchmark::State& state) {
    const uint64_t n = (uint64_t)state.range(0);
    SieveTable sieve(n);
    ArithFnTable g = tabulate_g(FnSpec::upsilon(), n, sieve);
    ArithFnTable id2 = power_table(n, 2);
    for (auto _ : state) {
        ArithFnTable f = dirichlet_convolve(g, id2);
        benchmark::DoNotOptimize(f(n));
    }
    state.SetItemsProcessed(state.iterations() * (int64_t)n);
}
BENCHMARK(BM_dirichlet_convolve)->Arg(100000)->Arg(1000000);

static void BM_psi_blocked(benchmark::State& state) {
    const uint64_t x = (uint64_t)state.range(0);
    for (auto _ : state) {
        SumResult r = psi_fk_blocked(FnSpec::upsilon(), x);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_psi_blocked)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_psi_brute(benchmark::State& state) {
    const uint64_t x = (uint64_t)state.range(0);
    for (auto _ : state) {
        SumResult r = psi_fk_brute(FnSpec::upsilon(), x, false);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_psi_brute)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_vaaler_approx(benchmark::State& state) {
    const unsigned h = (unsigned)state.range(0);
    long double t = 0.318309886L;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vaaler_approx(t, h));
        t += 1e-6L;
    }
}
BENCHMARK(BM_vaaler_approx)->Arg(16)->Arg(256);

static void BM_cfk_truncated(benchmark::State& state) {
    const uint64_t n = (uint64_t)state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cfk_truncated_sum(FnSpec::upsilon(), n));
    }
    state.SetItemsProcessed(state.iterations() * (int64_t)n);
}
BENCHMARK(BM_cfk_truncated)->Arg(10000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
