#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "congest/blocker.hpp"
#include "congest/graph.hpp"
#include "congest/ledger.hpp"

namespace congest {

struct MsspResult {
  std::vector<NodeId> sources;  // ascending; row order of dist
  std::vector<std::vector<Weight>> dist;
  /// Which phase produced each final value: level -1 is the sqrt(n)-hop
  /// phase, otherwise (level, blocker node). Test support, rides in local
  /// state only.
  struct Trace {
    std::int16_t level = -1;
    NodeId q = -1;
  };
  std::vector<std::vector<Trace>> trace;
};

/// Highest level whose hop length still fits below sqrt(n)/2 under
/// h_0 = ceil(log2 n)^2 (or the override), h_i = h_{i-1} * ceil(log2 n).
/// Clamps to 0 when even h_0 is too large, so every level runs.
int level_floor(NodeId n, std::int64_t h0 = 0);

/// Exact multi-source shortest paths for |S| <= ceil(sqrt(n)): the blocker
/// sequence, a ceil(sqrt(n))-hop phase from every source, then per level
/// i >= level_floor: in/out hop tables from Q_i, a broadcast of the
/// |S| * |Q_i| source-to-blocker distances, and the local combine. Values
/// only ever decrease, and the minimum is taken over all levels cumulatively.
MsspResult mssp(const Graph& g, std::span<const NodeId> sources, RoundLedger& ledger,
                const BlockerOptions& opt = {});

}  // namespace congest
