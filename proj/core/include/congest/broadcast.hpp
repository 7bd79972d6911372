#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "congest/graph.hpp"
#include "congest/ledger.hpp"
#include "congest/sim.hpp"

namespace congest {

/// One broadcast item in the canonical global order (origin id, item index).
struct BcastItem {
  NodeId origin = 0;
  std::int32_t index = 0;
  std::int64_t value = 0;

  friend bool operator==(const BcastItem&, const BcastItem&) = default;
};

/// The spanning structure used by the broadcast primitive: BFS tree of the
/// underlying graph rooted at node 0, parent = smallest-id neighbor one BFS
/// layer up. This is standing network infrastructure (it depends only on the
/// topology and can be set up once for the lifetime of the network), so its
/// construction is not charged to individual broadcast invocations.
struct BfsTree {
  std::vector<NodeId> parent;  // -1 at the root
  std::vector<int> depth;
  std::vector<std::vector<NodeId>> children;  // ascending ids
};

BfsTree bfs_tree(const Graph& g);

/// Every node contributes a (possibly empty) list of words; afterwards every
/// node holds all K items sorted by (origin, index). Simulated as a pipelined
/// upcast/downcast over the BFS tree: each node up-streams the merge of its
/// own items and its children's (already sorted) streams, the root re-emits
/// the globally sorted stream down, end markers close both streams. Measured
/// rounds are audited against the K + 2n bound on every invocation.
///
/// Returns the common view (all per-node views are checked identical).
std::vector<BcastItem> broadcast_all(const Graph& g,
                                     const std::vector<std::vector<std::int64_t>>& items,
                                     RoundLedger& ledger, std::string_view label,
                                     const SimOptions& opt = {});

/// Same protocol, but item arrivals are handed to `sink` instead of being
/// accumulated into per-node views (protocols with large K consume items on
/// the fly; per-node copies of the whole view would dominate memory without
/// changing a single round). The sink runs once per (node, item) in canonical
/// order per node.
RunStats broadcast_stream(const Graph& g,
                          const std::vector<std::vector<std::int64_t>>& items,
                          const std::function<void(NodeId, const BcastItem&)>& sink,
                          RoundLedger& ledger, std::string_view label,
                          const SimOptions& opt = {});

}  // namespace congest
