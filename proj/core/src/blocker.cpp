#include "congest/blocker.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace congest {

std::int64_t blocker_h0(NodeId n) {
  std::int64_t lg = ceil_log2(n);
  return lg * lg;
}

int blocker_level_count(NodeId n) {
  // The loop count needs log log n; below n = 4 the sequence degenerates to
  // Q_0 = V alone (h_0 already reaches every simple path).
  if (n < 4) return 0;
  long double q = std::log2(static_cast<long double>(n)) /
                  std::log2(std::log2(static_cast<long double>(n)));
  // guard against floating dust on exact integer quotients
  long double c = std::ceil(q - 1e-9L);
  return static_cast<int>(c) - 1;
}

std::vector<TreePath> full_length_paths(const CsspCollection& c) {
  std::vector<TreePath> paths;
  for (std::size_t t = 0; t < c.tables.size(); ++t) {
    const HopTable& tab = c.tables[t];
    for (NodeId v = 0; v < static_cast<NodeId>(tab.dist.size()); ++v) {
      if (tab.dist[v] == kInfWeight || tab.hops[v] != c.h) continue;
      paths.push_back({t, trace_path(tab, v)});
    }
  }
  return paths;
}

bool verify_blocker(const CsspCollection& c, std::span<const NodeId> q) {
  std::vector<char> in_q;
  if (!c.tables.empty()) in_q.assign(c.tables.front().dist.size(), 0);
  for (NodeId x : q) in_q[x] = 1;
  for (const TreePath& p : full_length_paths(c)) {
    bool hit = false;
    for (NodeId x : p.nodes) {
      if (in_q[x]) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

BlockerSet greedy_blocker(const CsspCollection& c, NodeId n, RoundLedger& ledger,
                          std::string_view label, const BlockerOptions& opt) {
  BlockerSet q;
  q.h = c.h;
  q.source_set = c.sources;

  // Contract cost of the external deterministic construction.
  double charge = opt.round_constant * static_cast<double>(c.sources.size()) *
                  static_cast<double>(std::min<std::int64_t>(c.h, n - 1)) * ceil_log2(n);
  ledger.charge_modeled(label, std::llround(charge));

  std::vector<TreePath> paths = full_length_paths(c);
  if (paths.empty()) return q;
  if (c.h < 2) throw GraphError("cannot block 1-hop paths: they have no interior nodes");

  // interior-node coverage counts; a path counts as covered as soon as any
  // of its nodes (endpoints included) has been picked
  std::vector<std::vector<std::size_t>> interior_of(n), member_of(n);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto& nodes = paths[p].nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      member_of[nodes[i]].push_back(p);
      if (i > 0 && i + 1 < nodes.size()) interior_of[nodes[i]].push_back(p);
    }
  }
  std::vector<std::int64_t> count(n, 0);
  for (NodeId v = 0; v < n; ++v) count[v] = static_cast<std::int64_t>(interior_of[v].size());
  std::vector<char> covered(paths.size(), 0);
  std::size_t remaining = paths.size();

  while (remaining > 0) {
    NodeId best = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (count[v] > 0 && (best < 0 || count[v] > count[best])) best = v;
    }
    if (best < 0) throw std::logic_error("greedy blocker ran out of candidates");
    q.nodes.push_back(best);
    for (std::size_t p : member_of[best]) {
      if (covered[p]) continue;
      covered[p] = 1;
      --remaining;
      const auto& nodes = paths[p].nodes;
      for (std::size_t i = 1; i + 1 < nodes.size(); ++i) --count[nodes[i]];
    }
  }
  std::sort(q.nodes.begin(), q.nodes.end());
  return q;
}

BlockerSequence build_blocker_sequence(const Graph& g, RoundLedger& ledger,
                                       const BlockerOptions& opt) {
  const NodeId n = g.n();
  BlockerSequence seq;
  seq.n = n;
  seq.h0 = opt.h0_override > 0 ? opt.h0_override : blocker_h0(n);
  seq.all_nodes.resize(n);
  for (NodeId v = 0; v < n; ++v) seq.all_nodes[v] = v;

  const int levels = blocker_level_count(n);
  const std::int64_t lg = ceil_log2(n);
  std::vector<NodeId> q_prev = seq.all_nodes;
  std::int64_t h_prev = seq.h0;
  for (int i = 1; i <= levels; ++i) {
    std::string tag = "_L" + std::to_string(i);
    BlockerLevel level;
    level.index = i;
    level.h_prev = h_prev;
    level.h = h_prev * lg;
    level.csssp = build_csssp(g, q_prev, h_prev, ledger, "bseq_csssp" + tag, opt.sim);
    BlockerSet bs = greedy_blocker(level.csssp, n, ledger, "bseq_blocker" + tag, opt);
    level.q = bs.nodes;

    // every chosen node announces its id to the whole network
    std::vector<std::vector<std::int64_t>> items(n);
    for (NodeId v : level.q) items[v].push_back(v);
    broadcast_all(g, items, ledger, "bseq_bcast" + tag, opt.sim);

    q_prev = level.q;
    h_prev = level.h;
    seq.levels.push_back(std::move(level));
  }
  return seq;
}

std::string blocker_sequence_json(const BlockerSequence& seq) {
  nlohmann::ordered_json j;
  j["levels"] = nlohmann::ordered_json::array();
  {
    nlohmann::ordered_json l0;
    l0["i"] = 0;
    l0["h_i"] = seq.h0;
    l0["Q_i"] = seq.all_nodes;
    l0["size"] = seq.all_nodes.size();
    j["levels"].push_back(std::move(l0));
  }
  for (const BlockerLevel& level : seq.levels) {
    nlohmann::ordered_json l;
    l["i"] = level.index;
    l["h_i"] = level.h;
    l["Q_i"] = level.q;
    l["size"] = level.q.size();
    j["levels"].push_back(std::move(l));
  }
  return j.dump(2) + "\n";
}

std::vector<LevelTables> build_level_tables(const Graph& g, const BlockerSequence& seq,
                                            RoundLedger& ledger, const SimOptions& opt) {
  std::vector<LevelTables> out;
  for (int i = 0; i <= seq.level_count(); ++i) {
    LevelTables lt;
    auto q = seq.q(i);
    if (!q.empty()) {
      std::int64_t h_eff = std::min<std::int64_t>(seq.h(i), g.n() - 1);
      std::string tag = "_L" + std::to_string(i);
      lt.in_tables = multi_source_hop_sssp(g, q, h_eff, Dir::in, ledger, "lvl_in" + tag, opt);
      lt.out_tables = multi_source_hop_sssp(g, q, h_eff, Dir::out, ledger, "lvl_out" + tag, opt);
    }
    out.push_back(std::move(lt));
  }
  return out;
}

std::optional<DecompositionWitness> decomposition_witness(
    const BlockerSequence& seq, const std::vector<LevelTables>& tables, NodeId s, NodeId t,
    Weight delta_st, bool integer_mode) {
  if (delta_st == kInfWeight)
    throw std::invalid_argument("decomposition_witness: s does not reach t");
  for (int j = 0; j <= seq.level_count(); ++j) {
    auto q = seq.q(j);
    const LevelTables& lt = tables[j];
    for (std::size_t rank = 0; rank < q.size(); ++rank) {
      Weight sum = lt.in_tables[rank].dist[s] + lt.out_tables[rank].dist[t];
      if (weights_equal(sum, delta_st, integer_mode))
        return DecompositionWitness{j, q[rank]};
    }
  }
  return std::nullopt;
}

}  // namespace congest
