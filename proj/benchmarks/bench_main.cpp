#include <benchmark/benchmark.h>

#include "hffs/bounds.hpp"
#include "hffs/full_model.hpp"
#include "hffs/heuristic.hpp"
#include "hffs/instance_gen.hpp"
#include "hffs/lbbd.hpp"
#include "hffs/master.hpp"

using namespace hffs;

static void BM_Generate(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate({1, static_cast<int>(state.range(0)), 0, 0, seed++}));
}
BENCHMARK(BM_Generate)->Arg(50)->Arg(400);

static void BM_BestLb(benchmark::State& state) {
    const auto inst = generate({1, static_cast<int>(state.range(0)), 0, 0, 1});
    for (auto _ : state) benchmark::DoNotOptimize(best_lb(inst));
}
BENCHMARK(BM_BestLb)->Arg(20)->Arg(100)->Arg(400);

static void BM_Construct(benchmark::State& state) {
    const auto inst = generate({2, static_cast<int>(state.range(0)), 3, 2, 1});
    for (auto _ : state) benchmark::DoNotOptimize(construct_schedule(inst));
}
BENCHMARK(BM_Construct)->Arg(20)->Arg(100);

static void BM_Validate(benchmark::State& state) {
    const auto inst = generate({1, static_cast<int>(state.range(0)), 0, 0, 1});
    const auto s = construct_schedule(inst);
    for (auto _ : state) benchmark::DoNotOptimize(validate_schedule(inst, s));
}
BENCHMARK(BM_Validate)->Arg(50)->Arg(400);

// fixed node budgets keep the work per iteration constant
static void BM_Master(benchmark::State& state) {
    const auto inst = generate({2, static_cast<int>(state.range(0)), 2, 1, 3});
    engine::SearchParams p;
    p.node_limit = 2000;
    for (auto _ : state) benchmark::DoNotOptimize(solve_master(inst, {}, 0, p));
}
BENCHMARK(BM_Master)->Arg(6)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_FullModel(benchmark::State& state) {
    const auto inst = generate({2, static_cast<int>(state.range(0)), 2, 1, 3});
    engine::SearchParams p;
    p.node_limit = 2000;
    for (auto _ : state) benchmark::DoNotOptimize(solve_full(inst, p));
}
BENCHMARK(BM_FullModel)->Arg(6)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Lbbd(benchmark::State& state) {
    const auto inst = generate({2, static_cast<int>(state.range(0)), 2, 1, 3});
    LbbdBudget b;
    b.master_nodes = 2000;
    b.sub_nodes = 2000;
    b.max_iterations = 10;
    for (auto _ : state) benchmark::DoNotOptimize(run_lbbd(inst, b));
}
BENCHMARK(BM_Lbbd)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
