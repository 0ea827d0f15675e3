#include <benchmark/benchmark.h>

#include "maxcomm/families.hpp"
#include "maxcomm/norms.hpp"
#include "maxcomm/operators.hpp"
#include "maxcomm/parallel.hpp"

using namespace maxcomm;

namespace {

GridFunction input_1d(int cells) {
    return random_function(Grid::unit(1, cells), 7, -1.0, 1.0);
}

GridFunction input_2d(int cells) {
    return random_function(Grid::unit(2, cells), 7, -1.0, 1.0);
}

void BM_mf_brute_1d(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const GridFunction f = input_1d(cells);
    const ScaleSet scales = ScaleSet::all(cells);
    for (auto _ : state) benchmark::DoNotOptimize(mf_brute(f, scales));
}
BENCHMARK(BM_mf_brute_1d)->Arg(64)->Arg(256)->Arg(1024);

void BM_mf_fast_1d(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const GridFunction f = input_1d(cells);
    const ScaleSet scales = ScaleSet::all(cells);
    for (auto _ : state) benchmark::DoNotOptimize(mf_fast(f, scales));
}
BENCHMARK(BM_mf_fast_1d)->Arg(64)->Arg(256)->Arg(1024);

void BM_mf_brute_2d(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const GridFunction f = input_2d(cells);
    const ScaleSet scales = ScaleSet::all(cells);
    for (auto _ : state) benchmark::DoNotOptimize(mf_brute(f, scales));
}
BENCHMARK(BM_mf_brute_2d)->Arg(16)->Arg(32);

void BM_mf_fast_2d(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const GridFunction f = input_2d(cells);
    const ScaleSet scales = ScaleSet::all(cells);
    for (auto _ : state) benchmark::DoNotOptimize(mf_fast(f, scales));
}
BENCHMARK(BM_mf_fast_2d)->Arg(16)->Arg(32)->Arg(64);

void BM_maximal_commutator(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const Grid g = Grid::unit(1, cells);
    const GridFunction b = sample(random_cone_min(1, 3, 1.0, 0.5, 0.2, 1.0, 3), g);
    const GridFunction f = input_1d(cells);
    const ScaleSet scales = ScaleSet::all(cells);
    for (auto _ : state) benchmark::DoNotOptimize(maximal_commutator(b, f, scales));
}
BENCHMARK(BM_maximal_commutator)->Arg(32)->Arg(64)->Arg(128);

void BM_mq_deviation(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const Grid g = Grid::unit(1, cells);
    const GridFunction b = sample(random_cone_min(1, 3, 1.0, 0.5, 0.2, 1.0, 3), g);
    const ScaleSet scales = ScaleSet::all(cells);
    for (auto _ : state) benchmark::DoNotOptimize(mq_deviation(b, 0.5, 1.0, scales));
}
BENCHMARK(BM_mq_deviation)->Arg(16)->Arg(32)->Arg(64);

void BM_morrey_norm(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    const GridFunction f = input_1d(cells);
    const ScaleSet scales = ScaleSet::all(cells);
    for (auto _ : state) benchmark::DoNotOptimize(morrey_norm(f, 2.0, 0.5, scales));
}
BENCHMARK(BM_morrey_norm)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
