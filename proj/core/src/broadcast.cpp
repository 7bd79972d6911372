#include "congest/broadcast.hpp"

#include <algorithm>
#include <deque>

namespace congest {

BfsTree bfs_tree(const Graph& g) {
  BfsTree t;
  t.parent.assign(g.n(), -1);
  t.depth.assign(g.n(), -1);
  t.children.assign(g.n(), {});
  std::vector<NodeId> frontier{0};
  t.depth[0] = 0;
  int d = 0;
  while (!frontier.empty()) {
    std::vector<NodeId> next;
    for (NodeId v : frontier) {
      for (const Graph::Channel& c : g.channels(v)) {
        if (t.depth[c.to] < 0) {
          t.depth[c.to] = d + 1;
          next.push_back(c.to);
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
    ++d;
  }
  for (NodeId v = 1; v < g.n(); ++v) {
    // channels are sorted by id, so the first neighbor one layer up wins
    for (const Graph::Channel& c : g.channels(v)) {
      if (t.depth[c.to] == t.depth[v] - 1) {
        t.parent[v] = c.to;
        break;
      }
    }
    t.children[t.parent[v]].push_back(v);
  }
  return t;
}

namespace {

constexpr std::int64_t kCtrlDone = 0;

bool item_less(const BcastItem& a, const BcastItem& b) {
  return std::tie(a.origin, a.index) < std::tie(b.origin, b.index);
}

struct Shared {
  const Graph* g;
  const BfsTree* tree;
  const std::vector<std::vector<std::int64_t>>* items;
  const std::function<void(NodeId, const BcastItem&)>* sink;
};

struct DisseminateProgram {
  const Shared* sh = nullptr;

  int parent_slot = -1;
  std::vector<int> child_slots;
  std::vector<std::deque<BcastItem>> child_buf;
  std::vector<char> child_done;
  std::size_t own_next = 0;
  bool up_done_sent = false;
  std::deque<BcastItem> down_fifo;
  bool down_done_queued = false;  // end marker sits behind down_fifo
  bool down_complete = false;

  bool is_root() const { return parent_slot < 0; }

  void setup(const Shared& shared, NodeId self) {
    sh = &shared;
    const Graph& g = *shared.g;
    NodeId par = shared.tree->parent[self];
    parent_slot = par < 0 ? -1 : g.channel_slot(self, par);
    for (NodeId c : shared.tree->children[self]) child_slots.push_back(g.channel_slot(self, c));
    child_buf.resize(child_slots.size());
    child_done.assign(child_slots.size(), 0);
  }

  std::size_t own_count(NodeId self) const { return (*sh->items)[self].size(); }

  // Next element of the merged (own + children) sorted stream, if the merge
  // can already commit to it. Emitting is only safe once every unfinished
  // child has shown its stream head.
  enum class Up { stall, item, done };
  Up up_peek(NodeId self, BcastItem* out) const {
    bool have = false;
    BcastItem best{};
    for (std::size_t i = 0; i < child_buf.size(); ++i) {
      // a finished child contributes whatever is still buffered; an
      // unfinished one with nothing visible may still send something smaller
      if (!child_done[i] && child_buf[i].empty()) return Up::stall;
      if (!child_buf[i].empty() && (!have || item_less(child_buf[i].front(), best))) {
        best = child_buf[i].front();
        have = true;
      }
    }
    if (own_next < own_count(self)) {
      BcastItem mine{self, static_cast<std::int32_t>(own_next),
                     (*sh->items)[self][own_next]};
      if (!have || item_less(mine, best)) best = mine;
      have = true;
    }
    if (!have) return Up::done;
    *out = best;
    return Up::item;
  }

  void up_pop(NodeId self, const BcastItem& it) {
    if (it.origin == self && own_next < own_count(self) &&
        it.index == static_cast<std::int32_t>(own_next)) {
      ++own_next;
      return;
    }
    for (std::size_t i = 0; i < child_buf.size(); ++i) {
      if (!child_buf[i].empty() && child_buf[i].front() == it) {
        child_buf[i].pop_front();
        return;
      }
    }
  }

  void deliver(NodeId self, const BcastItem& it) { (*sh->sink)(self, it); }

  void send_item(Mailbox& mb, int slot, const BcastItem& it) {
    mb.send(slot, {static_cast<std::int64_t>(it.origin), static_cast<std::int64_t>(it.index),
                   it.value});
  }

  void step(Mailbox& mb, std::span<const Msg> in) {
    NodeId self = mb.self();
    // ingest
    for (const Msg& m : in) {
      bool from_parent = !is_root() && sh->tree->parent[self] == m.from;
      if (m.len == 3) {
        BcastItem it{static_cast<NodeId>(m.w[0]), static_cast<std::int32_t>(m.w[1]), m.w[2]};
        if (from_parent) {
          deliver(self, it);
          if (!child_slots.empty()) down_fifo.push_back(it);
        } else {
          for (std::size_t i = 0; i < child_slots.size(); ++i) {
            if (sh->tree->children[self][i] == m.from) {
              child_buf[i].push_back(it);
              break;
            }
          }
        }
      } else {
        if (from_parent) {
          down_done_queued = true;
        } else {
          for (std::size_t i = 0; i < child_slots.size(); ++i) {
            if (sh->tree->children[self][i] == m.from) {
              child_done[i] = 1;
              break;
            }
          }
        }
      }
    }

    // one upcast emission per round; the root's "upcast" is the global
    // downcast since its merged stream is already in canonical order
    bool more_later = false;
    if (!up_done_sent) {
      BcastItem it;
      switch (up_peek(self, &it)) {
        case Up::item:
          up_pop(self, it);
          if (is_root()) {
            deliver(self, it);
            for (int s : child_slots) send_item(mb, s, it);
          } else {
            send_item(mb, parent_slot, it);
          }
          {
            BcastItem peek;
            if (up_peek(self, &peek) != Up::stall) more_later = true;
          }
          break;
        case Up::done:
          if (is_root()) {
            for (int s : child_slots) mb.send(s, {kCtrlDone});
            down_complete = true;
          } else {
            mb.send(parent_slot, {kCtrlDone});
          }
          up_done_sent = true;
          break;
        case Up::stall:
          break;
      }
    }

    // one downcast relay per round per child edge
    if (!is_root()) {
      if (!down_fifo.empty()) {
        const BcastItem& it = down_fifo.front();
        for (int s : child_slots) send_item(mb, s, it);
        down_fifo.pop_front();
        if (!down_fifo.empty() || down_done_queued) more_later = true;
      } else if (down_done_queued && !down_complete) {
        for (int s : child_slots) mb.send(s, {kCtrlDone});
        down_complete = true;
      }
    }

    if (up_done_sent && down_complete) {
      mb.halt();
    } else if (more_later) {
      mb.wake_at(mb.round() + 1);
    }
  }

  void on_start(Mailbox& mb) { step(mb, {}); }
  void on_round(Mailbox& mb, std::span<const Msg> in) { step(mb, in); }
};

}  // namespace

RunStats broadcast_stream(const Graph& g,
                          const std::vector<std::vector<std::int64_t>>& items,
                          const std::function<void(NodeId, const BcastItem&)>& sink,
                          RoundLedger& ledger, std::string_view label, const SimOptions& opt) {
  if (static_cast<NodeId>(items.size()) != g.n())
    throw SimError("broadcast_all: need one item list per node");
  if (opt.beta < 3) throw SimError("broadcast needs beta >= 3");
  std::int64_t k = 0;
  for (const auto& per_node : items) k += static_cast<std::int64_t>(per_node.size());

  if (g.n() == 1) {
    for (std::size_t i = 0; i < items[0].size(); ++i)
      sink(0, BcastItem{0, static_cast<std::int32_t>(i), items[0][i]});
    ledger.add_measured(label, 0, 0);
    return {0, 0};
  }

  BfsTree tree = bfs_tree(g);
  Shared shared{&g, &tree, &items, &sink};
  std::vector<DisseminateProgram> programs(g.n());
  for (NodeId v = 0; v < g.n(); ++v) programs[v].setup(shared, v);

  RunStats stats = run_protocol(g, programs, ledger, label, opt);
  std::int64_t bound = k + 2 * static_cast<std::int64_t>(g.n());
  if (stats.rounds > bound)
    throw SimError("broadcast exceeded its K+2n bound: " + std::to_string(stats.rounds) +
                   " rounds for K=" + std::to_string(k) + ", n=" + std::to_string(g.n()));
  return stats;
}

std::vector<BcastItem> broadcast_all(const Graph& g,
                                     const std::vector<std::vector<std::int64_t>>& items,
                                     RoundLedger& ledger, std::string_view label,
                                     const SimOptions& opt) {
  std::vector<std::vector<BcastItem>> views(g.n());
  auto sink = [&views](NodeId v, const BcastItem& it) { views[v].push_back(it); };
  broadcast_stream(g, items, sink, ledger, label, opt);
  for (NodeId v = 1; v < g.n(); ++v) {
    if (views[v] != views[0])
      throw SimError("broadcast views diverged between node 0 and node " + std::to_string(v));
  }
  return std::move(views[0]);
}

}  // namespace congest
