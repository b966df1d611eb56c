#include <benchmark/benchmark.h>

#include "qent/indicators.hpp"
#include "qent/ket.hpp"
#include "qent/separability.hpp"
#include "qent/state.hpp"

using namespace qent;

static void BM_LevelMinorsTop(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PureState s = random_state(std::vector<int>(n, 2), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(level_minors(s, n));
    }
}
BENCHMARK(BM_LevelMinorsTop)->DenseRange(3, 8);

static void BM_FullProfile(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PureState s = random_state(std::vector<int>(n, 2), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_profile(s));
    }
}
BENCHMARK(BM_FullProfile)->DenseRange(3, 7);

static void BM_FactorizeProduct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    PureState s = random_state({2}, 3);
    for (int i = 1; i < n; ++i) s = tensor_product(s, random_state({2}, 3 + static_cast<std::uint64_t>(i)));
    s = normalize(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(factorize(s));
    }
}
BENCHMARK(BM_FactorizeProduct)->DenseRange(3, 8);

static void BM_ParseEvaluate(benchmark::State& state) {
    const std::string expr = "(1/sqrt(8))(|0001>+|0010>+|0100>+|0111>+|1000>+|1011>-|1101>+|1110>)";
    for (auto _ : state) {
        benchmark::DoNotOptimize(ket::evaluate_expression(expr));
    }
}
BENCHMARK(BM_ParseEvaluate);

BENCHMARK_MAIN();
