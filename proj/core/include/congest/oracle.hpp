#pragma once

#include <cstdint>
#include <vector>

#include "congest/graph.hpp"
#include "congest/hop_paths.hpp"

namespace congest {

/// Centralized ground truth for the test suites. None of this shares code or
/// data layout with the simulated protocols: Dijkstra relaxes in priority
/// order over adjacency arrays, the hop-bounded oracle is a layered dynamic
/// program over the raw edge list.

struct SsspRow {
  std::vector<Weight> dist;
  std::vector<NodeId> parent;  // parent on a shortest path; self at source
};

/// Exact single-source distances from (Dir::out) or to (Dir::in) s.
SsspRow dijkstra_sssp(const Graph& g, NodeId s, Dir dir = Dir::out);

/// Exact delta^h row: minimum weight over paths of at most h hops.
std::vector<Weight> hop_bounded_dp(const Graph& g, NodeId s, std::int64_t h,
                                   Dir dir = Dir::out);

/// Minimum hop count among *shortest* paths from/to s; -1 if unreachable.
std::vector<std::int32_t> min_hops_of_shortest(const Graph& g, NodeId s, Dir dir = Dir::out);

/// n x n exact distances (row = source).
struct DistMatrix {
  std::vector<std::vector<Weight>> d;
  Weight operator()(NodeId u, NodeId v) const { return d[u][v]; }
};
DistMatrix all_pairs(const Graph& g);

/// Per-node weight of the shortest directed cycle through v:
/// min over out-edges (v,u) of w(v,u) + delta(u,v).
std::vector<Weight> oracle_directed_ansc(const Graph& g);

/// Undirected minimum weight cycle by edge removal:
/// min over edges e=(u,v) of w(e) + delta_{G-e}(u,v). Avoids the doubled-edge
/// pitfall by construction.
Weight oracle_undirected_mwc(const Graph& g);

/// Same value plus one witness cycle as a node sequence (empty if acyclic).
struct MwcCycle {
  Weight weight = kInfWeight;
  std::vector<NodeId> cycle;
};
MwcCycle oracle_undirected_mwc_cycle(const Graph& g);

}  // namespace congest
