#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace congest {

/// Dense node identifier in [0, n).
using NodeId = std::int32_t;

/// Non-negative edge weight / path distance. Unreachable is represented by
/// kInfWeight; IEEE infinity saturates under addition and is absorbing under
/// min, which is exactly the arithmetic we need. In integer mode all values
/// are integral and every sum of interest stays far below 2^53, so arithmetic
/// is exact.
using Weight = double;

inline constexpr Weight kInfWeight = std::numeric_limits<Weight>::infinity();

/// Absolute tolerance used for comparisons when a graph carries non-integral
/// weights. Integer-weight graphs are compared exactly.
inline constexpr double kRealWeightTol = 1e-9;

struct EdgeSpec {
  NodeId u = 0;
  NodeId v = 0;
  Weight w = 0;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weighted directed or undirected graph with dense node ids.
///
/// Invariants established at construction: no self-loops, no parallel edges
/// in the same direction (parallel edges collapse to the minimum weight at
/// load), all weights >= 0 and finite, and the underlying undirected graph is
/// connected. Immutable afterwards; safe for concurrent reads.
class Graph {
 public:
  /// One entry of the underlying-undirected adjacency. The simulation engine
  /// communicates over these channels regardless of edge direction.
  /// `w_out` is the weight of the directed edge self->to (kInfWeight if the
  /// edge does not exist), `w_in` the weight of to->self. `twin` is the index
  /// of the mirror entry inside `to`'s channel list.
  struct Channel {
    NodeId to = 0;
    Weight w_out = kInfWeight;
    Weight w_in = kInfWeight;
    std::uint32_t twin = 0;
  };

  struct Arc {
    NodeId to = 0;
    Weight w = 0;
  };

  Graph() = default;

  /// Validates all invariants and builds the adjacency indexes. Throws
  /// GraphError on violation. `collapse_parallel` keeps the lightest of any
  /// parallel edges instead of rejecting them (used by the text loader).
  static Graph from_edges(bool directed, NodeId n, std::vector<EdgeSpec> edges,
                          bool collapse_parallel = false);

  static Graph load(std::istream& in);
  static Graph load_file(const std::string& path);
  void save(std::ostream& out) const;
  std::string to_text() const;

  /// Directed graphs get every edge flipped; undirected graphs are returned
  /// unchanged. Involution: reversed(reversed(g)) == g.
  Graph reversed() const;

  NodeId n() const { return n_; }
  std::int64_t m() const { return static_cast<std::int64_t>(edges_.size()); }
  bool directed() const { return directed_; }
  bool integer_weights() const { return integer_weights_; }

  /// Edges in canonical (u, v) order.
  std::span<const EdgeSpec> edges() const { return edges_; }

  std::span<const Channel> channels(NodeId v) const {
    return {channels_.data() + ch_off_[v], ch_off_[v + 1] - ch_off_[v]};
  }
  std::span<const Arc> out(NodeId v) const {
    return {out_arcs_.data() + out_off_[v], out_off_[v + 1] - out_off_[v]};
  }
  std::span<const Arc> in(NodeId v) const {
    return {in_arcs_.data() + in_off_[v], in_off_[v + 1] - in_off_[v]};
  }

  std::size_t channel_count() const { return channels_.size(); }
  std::size_t channel_base(NodeId v) const { return ch_off_[v]; }

  /// Index of `to` in channels(v), or -1.
  int channel_slot(NodeId v, NodeId to) const;

  /// Weight of the directed edge u->v, kInfWeight if absent. For undirected
  /// graphs this is the edge weight in either order.
  Weight edge_weight(NodeId u, NodeId v) const;

  bool operator==(const Graph& other) const;

 private:
  Weight edge_weight_raw(NodeId u, NodeId v) const;

  NodeId n_ = 0;
  bool directed_ = false;
  bool integer_weights_ = true;
  std::vector<EdgeSpec> edges_;
  std::vector<std::size_t> ch_off_, out_off_, in_off_;
  std::vector<Channel> channels_;
  std::vector<Arc> out_arcs_, in_arcs_;
};

/// Connected random graph: a random recursive spanning tree first, extra
/// edges after, integer weights uniform in [1, weight_max]. Deterministic for
/// fixed arguments; identical calls produce byte-identical serializations.
/// `avg_degree` targets m ~= n*avg_degree for directed graphs and
/// m ~= n*avg_degree/2 for undirected ones (so avg_degree is the mean total
/// degree in both cases).
Graph gen_random(NodeId n, double avg_degree, std::uint64_t seed,
                 int weight_max, bool directed);

/// The n-cycle 0 -> 1 -> ... -> n-1 -> 0 with the given weights. Undirected
/// cycles need n >= 3 (a doubled edge is not a cycle), directed ones n >= 2.
Graph gen_weighted_cycle(bool directed, std::span<const Weight> weights);

/// Mode-aware equality: exact for integer-weight data, absolute tolerance
/// kRealWeightTol otherwise. Infinities compare equal to each other.
bool weights_equal(Weight a, Weight b, bool integer_mode);

/// Canonical text rendering of one weight: integral values print with no
/// decimal point (bit-exact round-trip), others with round-trip precision.
std::string format_weight(Weight w);

}  // namespace congest
