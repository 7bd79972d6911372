// Microbenchmarks for the pieces that dominate wall-clock time in large
// simulations: the relaxation engine, the broadcast pipeline, the graph
// generator and the centralized oracle.

#include <benchmark/benchmark.h>

#include <cmath>

#include "congest/blocker.hpp"
#include "congest/broadcast.hpp"
#include "congest/cycles.hpp"
#include "congest/graph.hpp"
#include "congest/hop_paths.hpp"
#include "congest/mssp.hpp"
#include "congest/oracle.hpp"

using namespace congest;

namespace {

void BM_GenRandom(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Graph g = gen_random(n, 4, seed++, 20, true);
    benchmark::DoNotOptimize(g.m());
  }
}
BENCHMARK(BM_GenRandom)->Arg(256)->Arg(1024);

void BM_HopSssp(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  Graph g = gen_random(n, 4, 7, 20, true);
  const std::int64_t h = ceil_log2(n) * ceil_log2(n);
  NodeId s = 0;
  for (auto _ : state) {
    RoundLedger ledger;
    HopTable t = h_hop_out_sssp(g, s, h, ledger);
    benchmark::DoNotOptimize(t.dist.data());
    s = static_cast<NodeId>((s + 1) % n);
  }
  state.SetItemsProcessed(state.iterations() * h);
}
BENCHMARK(BM_HopSssp)->Arg(256)->Arg(1024);

void BM_Broadcast(benchmark::State& state) {
  const NodeId n = 256;
  const std::int64_t k = state.range(0);
  Graph g = gen_random(n, 4, 3, 20, false);
  std::vector<std::vector<std::int64_t>> items(n);
  for (std::int64_t i = 0; i < k; ++i) items[i % n].push_back(i);
  for (auto _ : state) {
    RoundLedger ledger;
    auto view = broadcast_all(g, items, ledger, "bc");
    benchmark::DoNotOptimize(view.size());
  }
  state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_Broadcast)->Arg(256)->Arg(2048);

void BM_DirectedMwc(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  Graph g = gen_random(n, 4, 11, 20, true);
  for (auto _ : state) {
    RoundLedger ledger;
    benchmark::DoNotOptimize(directed_mwc(g, ledger));
  }
}
BENCHMARK(BM_DirectedMwc)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Mssp(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  Graph g = gen_random(n, 4, 11, 20, true);
  std::vector<NodeId> sources;
  for (NodeId i = 0; i < static_cast<NodeId>(std::ceil(std::sqrt(n))); ++i)
    sources.push_back(i);
  for (auto _ : state) {
    RoundLedger ledger;
    MsspResult r = mssp(g, sources, ledger);
    benchmark::DoNotOptimize(r.dist.size());
  }
}
BENCHMARK(BM_Mssp)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DijkstraOracle(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  Graph g = gen_random(n, 4, 5, 20, true);
  NodeId s = 0;
  for (auto _ : state) {
    SsspRow r = dijkstra_sssp(g, s);
    benchmark::DoNotOptimize(r.dist.data());
    s = static_cast<NodeId>((s + 1) % n);
  }
}
BENCHMARK(BM_DijkstraOracle)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
