#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "congest/graph.hpp"
#include "congest/ledger.hpp"
#include "congest/sim.hpp"

namespace congest {

enum class Dir { out, in };

/// Hop-limited single-source table: dist is the exact minimum weight over
/// paths of at most h hops (kInfWeight when no such path exists), hops the
/// hop count of the recorded path, link the parent (outgoing tables) or next
/// node (incoming tables) on it. link is initialized to the node itself and
/// stays so for unreached nodes.
///
/// All relaxations break ties canonically: smaller distance, then fewer
/// hops, then smaller neighbor id. The rule is shared by every table in the
/// artifact, which is what makes tree collections consistent.
struct HopTable {
  NodeId source = 0;
  std::int64_t h = 0;
  Dir dir = Dir::out;
  std::vector<Weight> dist;
  std::vector<std::int32_t> hops;
  std::vector<NodeId> link;
};

/// A collection of hop-limited trees over a common source set in which any
/// shared u->v segment is identical across all trees containing it.
struct CsspCollection {
  std::vector<NodeId> sources;  // ascending
  std::int64_t h = 0;           // nominal hop length of the level
  std::vector<HopTable> tables; // rank-aligned with sources, Dir::out
};

inline constexpr std::string_view kTieRule = "(dist, hops, neighbor id) lexicographic";

/// h rounds of the distributed relaxation from source s along edge
/// directions; exactly h measured rounds.
HopTable h_hop_out_sssp(const Graph& g, NodeId s, std::int64_t h, RoundLedger& ledger,
                        std::string_view label = "hop_out_sssp", const SimOptions& opt = {});

/// Mirror image: distances to s, next pointers, messages flow against edge
/// direction; exactly h measured rounds.
HopTable h_hop_in_sssp(const Graph& g, NodeId s, std::int64_t h, RoundLedger& ledger,
                       std::string_view label = "hop_in_sssp", const SimOptions& opt = {});

/// Runs the single-source program once per source in ascending id order;
/// measured rounds = |sources| * h.
std::vector<HopTable> multi_source_hop_sssp(const Graph& g, std::span<const NodeId> sources,
                                            std::int64_t h, Dir dir, RoundLedger& ledger,
                                            std::string_view label = "multi_hop_sssp",
                                            const SimOptions& opt = {});

/// Canonical-tie-break tree collection for the source set. `h` is recorded
/// as given; the relaxation itself runs min(h, n-1) rounds since longer
/// hop budgets cannot change any distance. An empty source set yields an
/// empty collection at zero cost.
CsspCollection build_csssp(const Graph& g, std::span<const NodeId> sources, std::int64_t h,
                           RoundLedger& ledger, std::string_view label = "csssp",
                           const SimOptions& opt = {});

/// Both h-hop accuracy conditions against the centralized hop-bounded
/// oracle: dist >= true distance everywhere, with equality wherever some
/// shortest path of <= h hops exists.
bool verify_h_hop_accurate(const HopTable& table, const Graph& g);

/// Structural and consistency checks for a collection: every recorded path
/// traces back to its root within h hops with weights summing exactly to
/// dist, and any u->v segment present in several trees is identical in all
/// of them. `sample_pairs` = 0 checks all (tree, tree, node) triples.
bool verify_csssp(const CsspCollection& c, const Graph& g, std::size_t sample_pairs = 0,
                  std::uint64_t seed = 1);

/// Root-to-v node sequence by following link pointers; empty if v is
/// unreached. For incoming tables the sequence runs v..source.
std::vector<NodeId> trace_path(const HopTable& table, NodeId v);

/// Debug dump, header "node,dist,hops,parent_or_next".
void write_hop_table_csv(const HopTable& table, std::ostream& out);

}  // namespace congest
