#include "congest/oracle.hpp"

#include <algorithm>
#include <queue>

namespace congest {

namespace {

// Dijkstra over the requested orientation, optionally treating one
// undirected edge as deleted.
SsspRow dijkstra_impl(const Graph& g, NodeId s, Dir dir, NodeId skip_u, NodeId skip_v) {
  SsspRow r;
  r.dist.assign(g.n(), kInfWeight);
  r.parent.assign(g.n(), -1);
  r.dist[s] = 0;
  r.parent[s] = s;
  using Entry = std::pair<Weight, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != r.dist[v]) continue;
    auto arcs = dir == Dir::out ? g.out(v) : g.in(v);
    for (const Graph::Arc& a : arcs) {
      if ((v == skip_u && a.to == skip_v) || (v == skip_v && a.to == skip_u)) continue;
      Weight nd = d + a.w;
      if (nd < r.dist[a.to]) {
        r.dist[a.to] = nd;
        r.parent[a.to] = v;
        pq.push({nd, a.to});
      }
    }
  }
  return r;
}

}  // namespace

SsspRow dijkstra_sssp(const Graph& g, NodeId s, Dir dir) {
  return dijkstra_impl(g, s, dir, -1, -1);
}

std::vector<Weight> hop_bounded_dp(const Graph& g, NodeId s, std::int64_t h, Dir dir) {
  std::vector<Weight> cur(g.n(), kInfWeight), next;
  cur[s] = 0;
  next = cur;
  for (std::int64_t layer = 0; layer < h; ++layer) {
    bool changed = false;
    for (const EdgeSpec& e : g.edges()) {
      auto relax = [&](NodeId a, NodeId b, Weight w) {
        if (cur[a] != kInfWeight && cur[a] + w < next[b]) {
          next[b] = cur[a] + w;
          changed = true;
        }
      };
      if (dir == Dir::out) {
        relax(e.u, e.v, e.w);
        if (!g.directed()) relax(e.v, e.u, e.w);
      } else {
        relax(e.v, e.u, e.w);
        if (!g.directed()) relax(e.u, e.v, e.w);
      }
    }
    cur = next;
    if (!changed) break;  // all later layers are identical
  }
  return cur;
}

std::vector<std::int32_t> min_hops_of_shortest(const Graph& g, NodeId s, Dir dir) {
  std::vector<Weight> exact = hop_bounded_dp(g, s, g.n() - 1, dir);
  std::vector<std::int32_t> minhops(g.n(), -1);
  std::vector<Weight> cur(g.n(), kInfWeight);
  cur[s] = 0;
  if (exact[s] == 0) minhops[s] = 0;
  std::vector<Weight> next = cur;
  for (std::int32_t layer = 1; layer < g.n(); ++layer) {
    bool changed = false;
    for (const EdgeSpec& e : g.edges()) {
      auto relax = [&](NodeId a, NodeId b, Weight w) {
        if (cur[a] != kInfWeight && cur[a] + w < next[b]) {
          next[b] = cur[a] + w;
          changed = true;
        }
      };
      if (dir == Dir::out) {
        relax(e.u, e.v, e.w);
        if (!g.directed()) relax(e.v, e.u, e.w);
      } else {
        relax(e.v, e.u, e.w);
        if (!g.directed()) relax(e.u, e.v, e.w);
      }
    }
    cur = next;
    for (NodeId v = 0; v < g.n(); ++v) {
      if (minhops[v] < 0 && cur[v] == exact[v] && exact[v] != kInfWeight) minhops[v] = layer;
    }
    if (!changed) break;
  }
  return minhops;
}

DistMatrix all_pairs(const Graph& g) {
  DistMatrix m;
  m.d.reserve(g.n());
  for (NodeId s = 0; s < g.n(); ++s) m.d.push_back(dijkstra_sssp(g, s).dist);
  return m;
}

std::vector<Weight> oracle_directed_ansc(const Graph& g) {
  if (!g.directed()) throw GraphError("oracle_directed_ansc needs a directed graph");
  std::vector<Weight> delta(g.n(), kInfWeight);
  // delta(u, v) for all u with an edge into the cycle position; one Dijkstra
  // per node keeps the oracle simple and obviously correct
  for (NodeId u = 0; u < g.n(); ++u) {
    std::vector<Weight> from_u = dijkstra_sssp(g, u).dist;
    for (const Graph::Arc& a : g.in(u)) {
      // edge (a.to -> u), cycle candidate for node a.to via u
      Weight cand = a.w + from_u[a.to];
      delta[a.to] = std::min(delta[a.to], cand);
    }
  }
  return delta;
}

Weight oracle_undirected_mwc(const Graph& g) { return oracle_undirected_mwc_cycle(g).weight; }

MwcCycle oracle_undirected_mwc_cycle(const Graph& g) {
  if (g.directed()) throw GraphError("oracle_undirected_mwc needs an undirected graph");
  MwcCycle best;
  for (const EdgeSpec& e : g.edges()) {
    SsspRow row = dijkstra_impl(g, e.u, Dir::out, e.u, e.v);
    Weight cand = e.w + row.dist[e.v];
    if (cand < best.weight) {
      best.weight = cand;
      best.cycle.clear();
      NodeId cur = e.v;
      while (cur != e.u) {
        best.cycle.push_back(cur);
        cur = row.parent[cur];
      }
      best.cycle.push_back(e.u);
      std::reverse(best.cycle.begin(), best.cycle.end());
      // sequence e.u .. e.v, closed by edge (e.v, e.u)
    }
  }
  return best;
}

}  // namespace congest
