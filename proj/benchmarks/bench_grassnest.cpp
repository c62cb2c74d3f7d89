#include <benchmark/benchmark.h>

#include <random>

#include "grassnest/chern.hpp"
#include "grassnest/ffield.hpp"
#include "grassnest/grassmann.hpp"
#include "grassnest/nesting.hpp"
#include "grassnest/schwz.hpp"

using namespace grassnest;

static void BM_Rref(benchmark::State& state)
{
    const auto f = ffield::FieldSpec::of_order(static_cast<unsigned>(state.range(0)));
    const auto n = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(1);
    ffield::MatGF m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m.at(r, c) = f.element(static_cast<unsigned>(rng() % f.q()));
    for (auto _ : state)
        benchmark::DoNotOptimize(ffield::rref(f, m));
}
BENCHMARK(BM_Rref)->Args({2, 8})->Args({3, 8})->Args({16, 8})->Args({2, 32});

static void BM_Enumerate(benchmark::State& state)
{
    const auto f = ffield::FieldSpec::of_order(static_cast<unsigned>(state.range(0)));
    const auto n = static_cast<unsigned>(state.range(1));
    const auto i = static_cast<unsigned>(state.range(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(grassmann::enumerate_subspaces(n, i, f));
}
BENCHMARK(BM_Enumerate)->Args({2, 6, 3})->Args({3, 5, 2})->Args({2, 8, 4})->Unit(benchmark::kMillisecond);

static void BM_Incidence(benchmark::State& state)
{
    const auto f = ffield::FieldSpec::of_order(static_cast<unsigned>(state.range(0)));
    const auto n = static_cast<unsigned>(state.range(1));
    const auto i = static_cast<unsigned>(state.range(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(grassmann::incidence_graph(i, n - i, n, f));
}
BENCHMARK(BM_Incidence)->Args({2, 6, 2})->Args({3, 4, 1})->Args({2, 7, 3})->Unit(benchmark::kMillisecond);

static void BM_Matching(benchmark::State& state)
{
    const auto f = ffield::FieldSpec::of_order(static_cast<unsigned>(state.range(0)));
    const auto n = static_cast<unsigned>(state.range(1));
    const auto i = static_cast<unsigned>(state.range(2));
    const auto inc = grassmann::incidence_graph(i, n - i, n, f);
    for (auto _ : state)
        benchmark::DoNotOptimize(nesting::find_bijective_nesting(inc));
    state.counters["left"] = static_cast<double>(inc->left->size());
}
BENCHMARK(BM_Matching)->Args({2, 6, 2})->Args({3, 4, 1})->Args({2, 7, 3})->Unit(benchmark::kMillisecond);

static void BM_TruncInverse(benchmark::State& state)
{
    const auto vars = static_cast<unsigned>(state.range(0));
    const auto d = static_cast<unsigned>(state.range(1));
    const auto a = chern::ctot_tautological(vars, d);
    for (auto _ : state)
        benchmark::DoNotOptimize(chern::trunc_inverse(a));
}
BENCHMARK(BM_TruncInverse)->Args({2, 8})->Args({3, 6})->Args({3, 10})->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state)
{
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(schwz::classify_chern_splits(n));
}
BENCHMARK(BM_Classify)->Arg(6)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
