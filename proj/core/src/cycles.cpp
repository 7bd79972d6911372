#include "congest/cycles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "congest/broadcast.hpp"
#include "congest/oracle.hpp"

namespace congest {

namespace {

std::int64_t dist_bits(Weight w) { return std::bit_cast<std::int64_t>(w); }
Weight bits_dist(std::int64_t b) { return std::bit_cast<Weight>(b); }

// Rank-per-round neighbor exchange shared by both cycle algorithms. In round
// k every node reports its value for blocker rank k (plus the parent id in
// the undirected variant); silence encodes an infinite value. Runs exactly
// |Q| rounds.
struct ExchangeProgram {
  const Graph* g = nullptr;
  const std::vector<HopTable>* send_tables = nullptr;  // indexed by rank; value at self
  const std::vector<HopTable>* own_tables = nullptr;   // receiver-local values
  std::span<const NodeId> q;
  bool undirected = false;
  int level = 0;
  Weight* delta = nullptr;
  CycleWitness* wit = nullptr;

  void send_rank(Mailbox& mb, std::int64_t k) {
    const HopTable& t = (*send_tables)[k];
    NodeId self = mb.self();
    if (t.dist[self] == kInfWeight) return;  // silence = infinity
    auto ch = g->channels(self);
    if (undirected) {
      // only tree members participate: their recorded paths realize their
      // distances, which is what the admissibility screen reasons about
      if (t.hops[self] < 0) return;
      const std::int64_t words[3] = {k, dist_bits(t.dist[self]), t.link[self]};
      for (int s = 0; s < static_cast<int>(ch.size()); ++s) mb.send(s, words);
    } else {
      // incoming distances go to incoming neighbors
      const std::int64_t words[2] = {k, dist_bits(t.dist[self])};
      for (int s = 0; s < static_cast<int>(ch.size()); ++s)
        if (ch[s].w_in != kInfWeight) mb.send(s, words);
    }
  }

  void on_start(Mailbox& mb) {
    send_rank(mb, 0);
    mb.wake_at(1);
  }

  void on_round(Mailbox& mb, std::span<const Msg> in) {
    NodeId self = mb.self();
    auto ch = g->channels(self);
    for (const Msg& m : in) {
      std::int64_t k = m.w[0];
      const HopTable& own = (*own_tables)[k];
      Weight mine = own.dist[self];
      if (mine == kInfWeight) continue;
      Weight theirs = bits_dist(m.w[1]);
      Weight cand;
      if (undirected) {
        // admissible check: edge (u,v) on neither recorded path
        if (own.hops[self] < 0) continue;
        if (own.link[self] == m.from) continue;
        if (static_cast<NodeId>(m.w[2]) == self) continue;
        cand = ch[m.via].w_out + theirs + mine;
      } else {
        cand = ch[m.via].w_out + theirs + mine;
      }
      if (cand < *delta) {
        *delta = cand;
        *wit = CycleWitness{m.from, q[k], level};
      }
    }
    std::int64_t t = mb.round();
    if (t < static_cast<std::int64_t>(q.size())) {
      send_rank(mb, t);
      mb.wake_at(t + 1);
    } else {
      mb.halt();
    }
  }
};

// One exchange phase; values land directly in result arrays.
void run_exchange(const Graph& g, std::span<const NodeId> q, int level,
                  const std::vector<HopTable>& send_tables,
                  const std::vector<HopTable>& own_tables, bool undirected,
                  std::vector<Weight>& delta, std::vector<CycleWitness>& wit,
                  RoundLedger& ledger, const std::string& label, const SimOptions& opt) {
  std::vector<ExchangeProgram> programs(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    ExchangeProgram& p = programs[v];
    p.g = &g;
    p.send_tables = &send_tables;
    p.own_tables = &own_tables;
    p.q = q;
    p.undirected = undirected;
    p.level = level;
    p.delta = &delta[v];
    p.wit = &wit[v];
  }
  run_protocol(g, programs, ledger, label, opt);
}

Weight broadcast_min(const Graph& g, const std::vector<Weight>& per_node, RoundLedger& ledger,
                     std::string_view label, const SimOptions& opt) {
  std::vector<std::vector<std::int64_t>> items(g.n());
  for (NodeId v = 0; v < g.n(); ++v) items[v].push_back(dist_bits(per_node[v]));
  std::vector<BcastItem> view = broadcast_all(g, items, ledger, label, opt);
  Weight best = kInfWeight;
  for (const BcastItem& it : view) best = std::min(best, bits_dist(it.value));
  return best;
}

}  // namespace

CycleResult directed_ansc(const Graph& g, RoundLedger& ledger, const BlockerOptions& opt) {
  if (!g.directed()) throw GraphError("directed_ansc needs a directed graph");
  BlockerSequence seq = build_blocker_sequence(g, ledger, opt);

  CycleResult r;
  r.directed = true;
  r.per_node.assign(g.n(), kInfWeight);
  r.witnesses.assign(g.n(), {});
  for (int i = 0; i <= seq.level_count(); ++i) {
    auto q = seq.q(i);
    if (q.empty()) continue;
    std::int64_t h_eff = std::min<std::int64_t>(seq.h(i), g.n() - 1);
    std::string tag = "_L" + std::to_string(i);
    std::vector<HopTable> in_tables =
        multi_source_hop_sssp(g, q, h_eff, Dir::in, ledger, "ansc_in" + tag, opt.sim);
    std::vector<HopTable> out_tables =
        multi_source_hop_sssp(g, q, h_eff, Dir::out, ledger, "ansc_out" + tag, opt.sim);
    run_exchange(g, q, i, in_tables, out_tables, /*undirected=*/false, r.per_node,
                 r.witnesses, ledger, "ansc_xchg" + tag, opt.sim);
  }
  r.global = *std::min_element(r.per_node.begin(), r.per_node.end());
  return r;
}

Weight directed_mwc(const Graph& g, RoundLedger& ledger, const BlockerOptions& opt) {
  CycleResult r = directed_ansc(g, ledger, opt);
  return mwc_broadcast_min(g, r, ledger, opt.sim);
}

Weight mwc_broadcast_min(const Graph& g, const CycleResult& r, RoundLedger& ledger,
                         const SimOptions& opt) {
  return broadcast_min(g, r.per_node, ledger, "mwc_bcast", opt);
}

std::vector<NodeId> admissible_set(const Graph& g, const HopTable& table_q, NodeId v) {
  std::vector<NodeId> a;
  for (const Graph::Channel& c : g.channels(v)) {
    if (table_q.link[v] == c.to) continue;
    if (table_q.link[c.to] == v) continue;
    a.push_back(c.to);
  }
  return a;
}

CycleResult undirected_mwc(const Graph& g, RoundLedger& ledger, const BlockerOptions& opt) {
  if (g.directed()) throw GraphError("undirected_mwc needs an undirected graph");
  BlockerSequence seq = build_blocker_sequence(g, ledger, opt);

  CycleResult r;
  r.directed = false;
  r.per_node.assign(g.n(), kInfWeight);
  r.witnesses.assign(g.n(), {});
  for (int i = 0; i <= seq.level_count(); ++i) {
    auto q = seq.q(i);
    if (q.empty()) continue;
    std::int64_t h_eff = std::min<std::int64_t>(seq.h(i), g.n() - 1);
    std::string tag = "_L" + std::to_string(i);
    std::vector<HopTable> tables =
        multi_source_hop_sssp(g, q, h_eff, Dir::out, ledger, "mwc_sssp" + tag, opt.sim);
    run_exchange(g, q, i, tables, tables, /*undirected=*/true, r.per_node, r.witnesses,
                 ledger, "mwc_xchg" + tag, opt.sim);
  }
  r.global = broadcast_min(g, r.per_node, ledger, "mwc_bcast", opt.sim);
  return r;
}

std::pair<NodeId, NodeId> check_critical_edge(const Graph& g, std::span<const NodeId> cycle,
                                              NodeId s) {
  if (g.directed()) throw GraphError("check_critical_edge works on undirected graphs");
  const std::size_t l = cycle.size();
  if (l < 3) throw GraphError("cycle must have at least 3 nodes");
  std::size_t s_pos = l;
  for (std::size_t i = 0; i < l; ++i) {
    if (cycle[i] == s) s_pos = i;
  }
  if (s_pos == l) throw GraphError("s is not on the cycle");

  // rotate so s sits at position 0
  std::vector<NodeId> c(l);
  for (std::size_t i = 0; i < l; ++i) c[i] = cycle[(s_pos + i) % l];
  std::vector<Weight> ew(l);
  Weight total = 0;
  for (std::size_t i = 0; i < l; ++i) {
    ew[i] = g.edge_weight(c[i], c[(i + 1) % l]);
    if (ew[i] == kInfWeight) throw GraphError("cycle uses a non-edge");
    total += ew[i];
  }

  // the ceil/floor forms of the half-weight window are the integer-weight
  // statement; real weights use the plain midpoint with tolerance
  const bool integer = g.integer_weights();
  const Weight hi = integer ? std::floor(total / 2) : total / 2;
  std::vector<Weight> dist_s = dijkstra_sssp(g, s).dist;

  Weight prefix = 0;  // weight of arc c[0]..c[j]
  for (std::size_t j = 0; j < l; ++j) {
    if (j > 0) prefix += ew[j - 1];
    const Weight w_e = ew[j];
    const Weight lo = (integer ? std::ceil(total / 2) : total / 2) - w_e;
    const Weight arc_a = prefix;            // s .. c[j], avoiding edge j
    const Weight arc_b = total - prefix - w_e;  // c[j+1] .. around .. s
    auto in_window = [&](Weight x) {
      if (integer) return lo <= x && x <= hi;
      return x >= lo - kRealWeightTol && x <= hi + kRealWeightTol;
    };
    if (!in_window(arc_a) || !in_window(arc_b)) continue;
    if (!weights_equal(dist_s[c[j]], arc_a, integer)) continue;
    if (!weights_equal(dist_s[c[(j + 1) % l]], arc_b, integer)) continue;
    return {c[j], c[(j + 1) % l]};
  }
  throw GraphError("no critical edge found: property violated for this cycle");
}

}  // namespace congest
