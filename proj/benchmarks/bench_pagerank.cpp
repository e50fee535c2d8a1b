#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "gmrank/google_matrix.hpp"
#include "gmrank/ranking.hpp"
#include "gmrank/synthetic.hpp"

using namespace gmrank;

namespace {

const DirectedGraph &graph_of(std::size_t nodes) {
    static std::map<std::size_t, DirectedGraph> cache;
    auto it = cache.find(nodes);
    if (it == cache.end())
        it = cache.emplace(nodes, synthetic::preferential_attachment(nodes, 10, 7)).first;
    return it->second;
}

ExecutionMode mode_of(const benchmark::State &state) {
    return state.range(1) != 0 ? ExecutionMode::Deterministic : ExecutionMode::Parallel;
}

void BM_Apply(benchmark::State &state) {
    const DirectedGraph &g = graph_of(static_cast<std::size_t>(state.range(0)));
    const GoogleOperator op(g, kDefaultAlpha);
    std::vector<double> in(g.node_count(), 1.0 / static_cast<double>(g.node_count()));
    std::vector<double> out(g.node_count());
    for (auto _ : state) {
        op.apply_into(in, out, mode_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * g.edge_count()));
}
BENCHMARK(BM_Apply)->ArgsProduct({{10'000, 100'000, 1'000'000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_PageRank(benchmark::State &state) {
    const DirectedGraph &g = graph_of(static_cast<std::size_t>(state.range(0)));
    IterationOptions options;
    options.mode = mode_of(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(pagerank(g, kDefaultAlpha, options));
}
BENCHMARK(BM_PageRank)->ArgsProduct({{10'000, 100'000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TwoDRank(benchmark::State &state) {
    const auto n = static_cast<Rank>(state.range(0));
    std::mt19937_64 rng(11);
    std::vector<Rank> k(n), ks(n);
    std::iota(k.begin(), k.end(), 1u);
    std::iota(ks.begin(), ks.end(), 1u);
    std::shuffle(k.begin(), k.end(), rng);
    std::shuffle(ks.begin(), ks.end(), rng);
    const RankIndex pr = rank_index_from_positions(k);
    const RankIndex ch = rank_index_from_positions(ks);
    for (auto _ : state)
        benchmark::DoNotOptimize(two_d_rank(pr, ch));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TwoDRank)->RangeMultiplier(10)->Range(1'000, 1'000'000)->Complexity(benchmark::oN);

} // namespace
BENCHMARK_MAIN();
