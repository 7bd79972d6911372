#include "congest/mssp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "congest/broadcast.hpp"
#include "congest/hop_paths.hpp"

namespace congest {

int level_floor(NodeId n, std::int64_t h0) {
  if (h0 <= 0) h0 = blocker_h0(n);
  const double half_sqrt = std::sqrt(static_cast<double>(n)) / 2.0;
  if (static_cast<double>(h0) > half_sqrt) return 0;  // clamp: all levels run
  const std::int64_t lg = ceil_log2(n);
  int i = 0;
  std::int64_t h = h0;
  while (static_cast<double>(h * lg) <= half_sqrt) {
    h *= lg;
    ++i;
  }
  return i;
}

MsspResult mssp(const Graph& g, std::span<const NodeId> sources, RoundLedger& ledger,
                const BlockerOptions& opt) {
  const NodeId n = g.n();
  const std::int64_t sqrt_n = static_cast<std::int64_t>(std::ceil(std::sqrt(n)));
  MsspResult r;
  r.sources.assign(sources.begin(), sources.end());
  std::sort(r.sources.begin(), r.sources.end());
  if (r.sources.empty()) throw GraphError("mssp: source set is empty");
  if (std::adjacent_find(r.sources.begin(), r.sources.end()) != r.sources.end())
    throw GraphError("mssp: duplicate source");
  if (r.sources.front() < 0 || r.sources.back() >= n)
    throw GraphError("mssp: source out of range");
  if (static_cast<std::int64_t>(r.sources.size()) > sqrt_n)
    throw GraphError("source set too large: |S| <= ceil(sqrt(n)) = " + std::to_string(sqrt_n));
  const std::size_t ns = r.sources.size();

  BlockerSequence seq = build_blocker_sequence(g, ledger, opt);

  // short-path phase: ceil(sqrt(n))-hop tables from every source in sequence
  std::vector<HopTable> short_tables = multi_source_hop_sssp(
      g, r.sources, sqrt_n, Dir::out, ledger, "mssp_sqrt_sssp", opt.sim);
  r.dist.resize(ns);
  r.trace.assign(ns, std::vector<MsspResult::Trace>(n));
  for (std::size_t si = 0; si < ns; ++si) r.dist[si] = std::move(short_tables[si].dist);
  short_tables.clear();

  std::vector<std::size_t> row_of(n, ns);
  for (std::size_t si = 0; si < ns; ++si) row_of[r.sources[si]] = si;

  const int floor_i = level_floor(n, seq.h0);
  for (int i = floor_i; i <= seq.level_count(); ++i) {
    auto q = seq.q(i);
    if (q.empty()) continue;
    std::int64_t h_eff = std::min<std::int64_t>(seq.h(i), n - 1);
    std::string tag = "_L" + std::to_string(i);
    std::vector<HopTable> in_tables =
        multi_source_hop_sssp(g, q, h_eff, Dir::in, ledger, "mssp_in" + tag, opt.sim);
    std::vector<HopTable> out_tables =
        multi_source_hop_sssp(g, q, h_eff, Dir::out, ledger, "mssp_out" + tag, opt.sim);

    // each source announces its incoming distance to every blocker; the
    // combine consumes items on arrival, so no node stores the whole view
    std::vector<std::vector<std::int64_t>> items(n);
    for (NodeId s : r.sources) {
      items[s].reserve(q.size());
      for (std::size_t k = 0; k < q.size(); ++k)
        items[s].push_back(std::bit_cast<std::int64_t>(in_tables[k].dist[s]));
    }
    auto sink = [&](NodeId v, const BcastItem& it) {
      Weight s_to_q = std::bit_cast<Weight>(it.value);
      if (s_to_q == kInfWeight) return;
      Weight q_to_v = out_tables[static_cast<std::size_t>(it.index)].dist[v];
      if (q_to_v == kInfWeight) return;
      std::size_t row = row_of[it.origin];
      Weight cand = s_to_q + q_to_v;
      if (cand < r.dist[row][v]) {
        r.dist[row][v] = cand;
        r.trace[row][v] = {static_cast<std::int16_t>(i), q[static_cast<std::size_t>(it.index)]};
      }
    };
    broadcast_stream(g, items, sink, ledger, "mssp_bcast" + tag, opt.sim);
  }
  return r;
}

}  // namespace congest
