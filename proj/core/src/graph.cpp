#include "congest/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace congest {

namespace {

bool is_integral(Weight w) {
  return std::isfinite(w) && w == std::floor(w) && std::abs(w) < 9.007199254740992e15;
}

// Minimal deterministic RNG (splitmix64). std::uniform_int_distribution is
// implementation-defined, which would break the byte-identical-output
// contract, so we roll the few draws we need by hand.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound). Modulo bias is irrelevant here; determinism is not.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

void check_connected(NodeId n, const std::vector<std::vector<NodeId>>& und) {
  if (n <= 1) return;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  NodeId reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : und[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != n) {
    throw GraphError("graph invariant violated: underlying undirected graph is disconnected (" +
                     std::to_string(reached) + " of " + std::to_string(n) + " nodes reachable)");
  }
}

}  // namespace

Graph Graph::from_edges(bool directed, NodeId n, std::vector<EdgeSpec> edges,
                        bool collapse_parallel) {
  if (n < 1) throw GraphError("graph must have at least one node");
  for (const EdgeSpec& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw GraphError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ") with n=" + std::to_string(n));
    if (e.u == e.v)
      throw GraphError("self-loop rejected at node " + std::to_string(e.u));
    if (!(e.w >= 0) || !std::isfinite(e.w))
      throw GraphError("negative or non-finite weight on edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
  }

  // Canonical storage: undirected edges normalized to u < v, then sorted.
  if (!directed) {
    for (EdgeSpec& e : edges) {
      if (e.u > e.v) std::swap(e.u, e.v);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  std::vector<EdgeSpec> kept;
  kept.reserve(edges.size());
  for (const EdgeSpec& e : edges) {
    if (!kept.empty() && kept.back().u == e.u && kept.back().v == e.v) {
      if (!collapse_parallel)
        throw GraphError("parallel edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
      // keep the lightest parallel edge; shortest-path semantics never use
      // the heavier ones
      continue;
    }
    kept.push_back(e);
  }

  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  g.edges_ = std::move(kept);
  g.integer_weights_ = std::all_of(g.edges_.begin(), g.edges_.end(),
                                   [](const EdgeSpec& e) { return is_integral(e.w); });

  std::vector<std::vector<NodeId>> und(n);
  std::vector<std::vector<Arc>> outs(n), ins(n);
  for (const EdgeSpec& e : g.edges_) {
    und[e.u].push_back(e.v);
    und[e.v].push_back(e.u);
    outs[e.u].push_back({e.v, e.w});
    ins[e.v].push_back({e.u, e.w});
    if (!directed) {
      outs[e.v].push_back({e.u, e.w});
      ins[e.u].push_back({e.v, e.w});
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    auto& u = und[v];
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    auto by_to = [](const Arc& a, const Arc& b) { return a.to < b.to; };
    std::sort(outs[v].begin(), outs[v].end(), by_to);
    std::sort(ins[v].begin(), ins[v].end(), by_to);
  }
  check_connected(n, und);

  g.ch_off_.assign(n + 1, 0);
  g.out_off_.assign(n + 1, 0);
  g.in_off_.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    g.ch_off_[v + 1] = g.ch_off_[v] + und[v].size();
    g.out_off_[v + 1] = g.out_off_[v] + outs[v].size();
    g.in_off_[v + 1] = g.in_off_[v] + ins[v].size();
  }
  g.channels_.resize(g.ch_off_[n]);
  g.out_arcs_.reserve(g.out_off_[n]);
  g.in_arcs_.reserve(g.in_off_[n]);
  for (NodeId v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < und[v].size(); ++i) {
      Channel& c = g.channels_[g.ch_off_[v] + i];
      c.to = und[v][i];
    }
    g.out_arcs_.insert(g.out_arcs_.end(), outs[v].begin(), outs[v].end());
    g.in_arcs_.insert(g.in_arcs_.end(), ins[v].begin(), ins[v].end());
  }
  // fill channel weights and twin slots
  for (NodeId v = 0; v < n; ++v) {
    for (std::size_t i = g.ch_off_[v]; i < g.ch_off_[v + 1]; ++i) {
      Channel& c = g.channels_[i];
      c.w_out = g.edge_weight_raw(v, c.to);
      c.w_in = g.edge_weight_raw(c.to, v);
      int t = g.channel_slot(c.to, v);
      c.twin = static_cast<std::uint32_t>(g.ch_off_[c.to] + t);
    }
  }
  return g;
}

// out-arc binary search; used during construction before channels are final
Weight Graph::edge_weight_raw(NodeId u, NodeId v) const {
  auto arcs = out(u);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), v,
                             [](const Arc& a, NodeId t) { return a.to < t; });
  if (it != arcs.end() && it->to == v) return it->w;
  return kInfWeight;
}

Weight Graph::edge_weight(NodeId u, NodeId v) const { return edge_weight_raw(u, v); }

int Graph::channel_slot(NodeId v, NodeId to) const {
  auto ch = channels(v);
  auto it = std::lower_bound(ch.begin(), ch.end(), to,
                             [](const Channel& c, NodeId t) { return c.to < t; });
  if (it != ch.end() && it->to == to) return static_cast<int>(it - ch.begin());
  return -1;
}

bool Graph::operator==(const Graph& other) const {
  if (n_ != other.n_ || directed_ != other.directed_ || edges_.size() != other.edges_.size())
    return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].u != other.edges_[i].u || edges_[i].v != other.edges_[i].v ||
        edges_[i].w != other.edges_[i].w)
      return false;
  }
  return true;
}

Graph Graph::reversed() const {
  if (!directed_) return *this;
  std::vector<EdgeSpec> rev;
  rev.reserve(edges_.size());
  for (const EdgeSpec& e : edges_) rev.push_back({e.v, e.u, e.w});
  return from_edges(true, n_, std::move(rev));
}

Graph Graph::load(std::istream& in) {
  std::string line;
  std::string kind;
  long long n = -1, m = -1;
  bool header_done = false;
  std::vector<EdgeSpec> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    if (!header_done) {
      if (!(ls >> kind)) continue;  // blank/comment line before header
      if (kind != "directed" && kind != "undirected")
        throw GraphError("line " + std::to_string(lineno) +
                         ": expected 'directed' or 'undirected', got '" + kind + "'");
      if (!(ls >> n >> m) || n < 1 || m < 0)
        throw GraphError("line " + std::to_string(lineno) + ": bad header counts");
      header_done = true;
      continue;
    }
    long long u, v;
    double w;
    if (!(ls >> u)) continue;
    if (!(ls >> v >> w))
      throw GraphError("line " + std::to_string(lineno) + ": expected 'u v w'");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw GraphError("line " + std::to_string(lineno) + ": node id out of [0," +
                       std::to_string(n) + ")");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  if (!header_done) throw GraphError("missing graph header");
  if (static_cast<long long>(edges.size()) != m)
    throw GraphError("header declares " + std::to_string(m) + " edges, file has " +
                     std::to_string(edges.size()));
  return from_edges(kind == "directed", static_cast<NodeId>(n), std::move(edges),
                    /*collapse_parallel=*/true);
}

Graph Graph::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  return load(in);
}

void Graph::save(std::ostream& out) const {
  out << (directed_ ? "directed " : "undirected ") << n_ << ' ' << edges_.size() << '\n';
  for (const EdgeSpec& e : edges_) {
    out << e.u << ' ' << e.v << ' ' << format_weight(e.w) << '\n';
  }
}

std::string Graph::to_text() const {
  std::ostringstream os;
  save(os);
  return os.str();
}

std::string format_weight(Weight w) {
  if (w == kInfWeight) return "inf";
  char buf[40];
  if (is_integral(w)) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(w));
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", w);
  }
  return buf;
}

bool weights_equal(Weight a, Weight b, bool integer_mode) {
  if (a == kInfWeight || b == kInfWeight) return a == b;
  if (integer_mode) return a == b;
  return std::abs(a - b) <= kRealWeightTol;
}

Graph gen_random(NodeId n, double avg_degree, std::uint64_t seed, int weight_max,
                 bool directed) {
  if (n < 2) throw GraphError("gen_random needs n >= 2");
  if (weight_max < 1) throw GraphError("gen_random needs weight_max >= 1");
  if (avg_degree < 0) throw GraphError("gen_random needs avg_degree >= 0");
  Rng rng(seed ^ 0xC0DE5EEDULL);
  auto draw_w = [&] { return static_cast<Weight>(1 + rng.below(weight_max)); };

  // spanning tree first so the underlying graph is connected by construction
  std::vector<EdgeSpec> edges;
  std::vector<char> have;  // dedupe bitmap, directed sense
  have.assign(static_cast<std::size_t>(n) * (n <= 2048 ? n : 0), 0);
  auto mark = [&](NodeId u, NodeId v) -> bool {
    if (have.empty()) return true;
    std::size_t idx = static_cast<std::size_t>(u) * n + v;
    if (have[idx]) return false;
    have[idx] = 1;
    if (!directed) have[static_cast<std::size_t>(v) * n + u] = 1;
    return true;
  };
  for (NodeId v = 1; v < n; ++v) {
    NodeId u = static_cast<NodeId>(rng.below(v));
    bool flip = directed && (rng.next() & 1);
    NodeId a = flip ? v : u, b = flip ? u : v;
    mark(a, b);
    edges.push_back({a, b, draw_w()});
  }

  std::int64_t target =
      std::llround(static_cast<double>(n) * avg_degree / (directed ? 1.0 : 2.0));
  target = std::max<std::int64_t>(target, static_cast<std::int64_t>(edges.size()));
  std::int64_t attempts = 0;
  const std::int64_t max_attempts = 100 * target + 1000;
  while (static_cast<std::int64_t>(edges.size()) < target) {
    if (++attempts > max_attempts)
      throw GraphError("gen_random: infeasible parameters (cannot place " +
                       std::to_string(target) + " edges on n=" + std::to_string(n) + ")");
    NodeId u = static_cast<NodeId>(rng.below(n));
    NodeId v = static_cast<NodeId>(rng.below(n));
    if (u == v) continue;
    if (!have.empty()) {
      if (!mark(u, v)) continue;
      edges.push_back({u, v, draw_w()});
    } else {
      // huge n: skip dedupe bitmap, let from_edges collapse duplicates
      edges.push_back({u, v, draw_w()});
    }
  }
  return Graph::from_edges(directed, n, std::move(edges), /*collapse_parallel=*/true);
}

Graph gen_weighted_cycle(bool directed, std::span<const Weight> weights) {
  NodeId n = static_cast<NodeId>(weights.size());
  if (directed ? n < 2 : n < 3)
    throw GraphError(directed ? "directed cycle needs n >= 2"
                              : "undirected cycle needs n >= 3");
  std::vector<EdgeSpec> edges;
  edges.reserve(n);
  for (NodeId i = 0; i < n; ++i) {
    edges.push_back({i, static_cast<NodeId>((i + 1) % n), weights[i]});
  }
  return Graph::from_edges(directed, n, std::move(edges));
}

}  // namespace congest
