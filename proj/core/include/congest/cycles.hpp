#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "congest/blocker.hpp"
#include "congest/graph.hpp"
#include "congest/hop_paths.hpp"
#include "congest/ledger.hpp"

namespace congest {

/// Witness for a finite cycle value: outgoing/incident neighbor u, blocker
/// node q, sequence level. Local bookkeeping only; it rides in node state,
/// never in messages, so round counts are unaffected.
struct CycleWitness {
  NodeId u = -1;
  NodeId q = -1;
  int level = -1;
};

struct CycleResult {
  bool directed = false;
  /// Directed runs: delta(v), the exact weight of the shortest cycle through
  /// v. Undirected runs: delta_MWC(v), the candidate minimum at v; only the
  /// global minimum is a contract there.
  std::vector<Weight> per_node;
  Weight global = kInfWeight;
  std::vector<CycleWitness> witnesses;
};

/// Per-node exact shortest directed cycle weights over the blocker sequence
/// and per-level hop tables. Per level: in- and out-SSSP from Q_i, then a
/// |Q_i|-round neighbor exchange of incoming distances, then the local min.
CycleResult directed_ansc(const Graph& g, RoundLedger& ledger, const BlockerOptions& opt = {});

/// Global directed MWC: the ANSC run plus one broadcast of local minima.
Weight directed_mwc(const Graph& g, RoundLedger& ledger, const BlockerOptions& opt = {});

/// Just the final broadcast-and-min step, reusing an existing ANSC result.
Weight mwc_broadcast_min(const Graph& g, const CycleResult& r, RoundLedger& ledger,
                         const SimOptions& opt = {});

/// The neighbors u of v whose recorded paths from q avoid edge (u,v):
/// parent(q,v) != u and parent(q,u) != v. Computed locally from the parent
/// values of v's neighborhood.
std::vector<NodeId> admissible_set(const Graph& g, const HopTable& table_q, NodeId v);

/// Undirected minimum weight cycle; also returns the per-node candidates and
/// witnesses. Per level: one SSSP per blocker node, a |Q_i|-round neighbor
/// exchange of (dist, parent) pairs, the admissible-set-filtered local min,
/// and a final broadcast of all local values.
CycleResult undirected_mwc(const Graph& g, RoundLedger& ledger, const BlockerOptions& opt = {});

/// Test-support operation for the cycle-splitting property of minimum weight
/// cycles: given an oracle-certified MWC (node sequence) and s on it, returns
/// an edge (v_i, v_{i+1}) whose two cycle arcs from s are both global
/// shortest paths within the [ceil(W/2) - w(e), floor(W/2)] window. Throws
/// if no edge qualifies (which would falsify the property as implemented).
std::pair<NodeId, NodeId> check_critical_edge(const Graph& g, std::span<const NodeId> cycle,
                                              NodeId s);

}  // namespace congest
