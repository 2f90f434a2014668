#include <benchmark/benchmark.h>

#include "commdet/generate.hpp"
#include "commdet/graph.hpp"
#include "commdet/inference.hpp"
#include "commdet/statistics.hpp"

using namespace commdet;

// The Monte-Carlo loops live or die on these four kernels: sparse generation,
// union-find components, triangle counting, and the broad-scan hill climb.

static void BM_gen_er_sparse(benchmark::State& state) {
    const auto m = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_er(m, 2.0 / m, ++seed).num_edges());
    }
}
BENCHMARK(BM_gen_er_sparse)->Arg(10000)->Arg(100000);

static void BM_gen_er_dense(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_er(500, 0.4, ++seed).num_edges());
    }
}
BENCHMARK(BM_gen_er_dense);

static void BM_largest_cc(benchmark::State& state) {
    const auto m = static_cast<int>(state.range(0));
    Graph g = gen_er(m, 2.0 / m, 7);
    for (auto _ : state) benchmark::DoNotOptimize(largest_cc(g).size);
}
BENCHMARK(BM_largest_cc)->Arg(10000)->Arg(100000);

static void BM_triangles(benchmark::State& state) {
    Graph g = gen_er(2000, 1.0 / 2000, 7);
    for (auto _ : state) benchmark::DoNotOptimize(triangles(g));
}
BENCHMARK(BM_triangles);

static void BM_ktree_count(benchmark::State& state) {
    Graph g = gen_er(300, 1.5 / 300, 7);
    for (auto _ : state) benchmark::DoNotOptimize(ktree_count(g, 4));
}
BENCHMARK(BM_ktree_count);

static void BM_scan_exact(benchmark::State& state) {
    Graph g = gen_er(20, 0.2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(scan(g, 6, ScanMode::exact).value);
}
BENCHMARK(BM_scan_exact);

static void BM_broad_scan_component(benchmark::State& state) {
    auto inst = gen_planted(5000, 1.0 / 5000, 70, 4.0 / 70, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(broad_scan(inst.graph, 70, ScanMode::component).value);
}
BENCHMARK(BM_broad_scan_component);

BENCHMARK_MAIN();
