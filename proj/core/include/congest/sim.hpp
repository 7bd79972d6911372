#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "congest/graph.hpp"
#include "congest/ledger.hpp"

namespace congest {

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Messages are a bounded number of machine words; a word carries one node
/// id, one hop count, or one distance value (doubles travel bit-cast).
inline constexpr int kMaxWords = 8;

struct Msg {
  NodeId from = -1;
  std::uint16_t via = 0;  // receiver-side channel slot, filled by the engine
  std::uint8_t len = 0;
  std::array<std::int64_t, kMaxWords> w{};
};

struct SimOptions {
  /// Per-edge per-round bandwidth in words. Default matches "a constant
  /// number of node-ids, edge-weights, and distance values per edge".
  int beta = 3;
  /// Engine cap on rounds per protocol run; -1 means the default
  /// 50 * n * ceil(log2 n)^4 (generous against runaway programs), which the
  /// CONGEST_MAX_ROUNDS environment variable overrides.
  std::int64_t max_rounds = -1;
};

inline int ceil_log2(std::int64_t n) {
  int k = 0;
  std::int64_t p = 1;
  while (p < n) {
    p <<= 1;
    ++k;
  }
  return k;
}

inline std::int64_t default_round_cap(NodeId n) {
  if (const char* env = std::getenv("CONGEST_MAX_ROUNDS")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  std::int64_t lg = std::max(1, ceil_log2(n));
  return 50 * static_cast<std::int64_t>(n) * lg * lg * lg * lg;
}

struct RunStats {
  std::int64_t rounds = 0;
  std::int64_t messages = 0;
};

namespace detail {

struct EngineCore {
  const Graph* g = nullptr;
  int beta = 3;
  std::int64_t round = 0;
  std::int64_t messages = 0;
  NodeId current = -1;

  struct Pending {
    NodeId to;
    Msg m;
  };
  std::vector<Pending> pending;      // sent this round, delivered next
  std::vector<std::int64_t> last_sent;  // per directed channel slot, audit
  std::vector<std::vector<Msg>> inbox;
  std::vector<char> halted;
  NodeId halted_count = 0;
  std::vector<std::int64_t> wake_round;  // -1 = none
  std::priority_queue<std::pair<std::int64_t, NodeId>,
                      std::vector<std::pair<std::int64_t, NodeId>>,
                      std::greater<>> wakes;

  void reset(const Graph& graph, int beta_words) {
    g = &graph;
    beta = beta_words;
    round = 0;
    messages = 0;
    pending.clear();
    last_sent.assign(graph.channel_count(), -1);
    inbox.assign(graph.n(), {});
    halted.assign(graph.n(), 0);
    halted_count = 0;
    wake_round.assign(graph.n(), -1);
    wakes = {};
  }

  void send(int slot, std::span<const std::int64_t> words) {
    auto ch = g->channels(current);
    if (slot < 0 || static_cast<std::size_t>(slot) >= ch.size())
      throw SimError("node " + std::to_string(current) + " sent on invalid channel slot " +
                     std::to_string(slot));
    if (static_cast<int>(words.size()) > beta)
      throw SimError("bandwidth violation: node " + std::to_string(current) + " sent " +
                     std::to_string(words.size()) + " words (beta=" + std::to_string(beta) +
                     ") on edge (" + std::to_string(current) + "," + std::to_string(ch[slot].to) +
                     ") in round " + std::to_string(round));
    std::size_t gslot = g->channel_base(current) + static_cast<std::size_t>(slot);
    if (last_sent[gslot] == round)
      throw SimError("bandwidth violation: node " + std::to_string(current) +
                     " sent two messages on edge (" + std::to_string(current) + "," +
                     std::to_string(ch[slot].to) + ") in round " + std::to_string(round));
    last_sent[gslot] = round;
    Msg m;
    m.from = current;
    m.via = static_cast<std::uint16_t>(ch[slot].twin - g->channel_base(ch[slot].to));
    m.len = static_cast<std::uint8_t>(words.size());
    std::copy(words.begin(), words.end(), m.w.begin());
    pending.push_back({ch[slot].to, m});
    ++messages;
  }

  void wake_at(std::int64_t r) {
    if (r <= round)
      throw SimError("node " + std::to_string(current) + " scheduled wake at round " +
                     std::to_string(r) + " which is not in the future (round " +
                     std::to_string(round) + ")");
    if (wake_round[current] != r) {
      wake_round[current] = r;
      wakes.push({r, current});
    }
  }

  void halt() {
    if (!halted[current]) {
      halted[current] = 1;
      ++halted_count;
    }
  }
};

}  // namespace detail

/// Engine facade handed to node programs. A program may inspect its id and
/// the round, send at most one message per incident channel per round,
/// schedule a future wake-up, and halt.
class Mailbox {
 public:
  explicit Mailbox(detail::EngineCore& core) : core_(core) {}

  NodeId self() const { return core_.current; }
  std::int64_t round() const { return core_.round; }

  void send(int channel_slot, std::initializer_list<std::int64_t> words) {
    core_.send(channel_slot, {words.begin(), words.size()});
  }
  void send(int channel_slot, std::span<const std::int64_t> words) {
    core_.send(channel_slot, words);
  }
  void wake_at(std::int64_t round) { core_.wake_at(round); }
  void halt() { core_.halt(); }

 private:
  detail::EngineCore& core_;
};

/// Runs one synchronous protocol: on_start at round 0 (local, free), then
/// lockstep rounds in which messages sent in round r arrive in round r+1.
/// on_round is invoked only for nodes that received something or asked to be
/// woken; quiet stretches are fast-forwarded without observable difference.
/// Rounds count until every program has halted. Execution is sequential and
/// deterministic: inboxes arrive sorted by sender id.
template <class Program>
RunStats run_protocol(const Graph& g, std::vector<Program>& programs, RoundLedger& ledger,
                      std::string_view phase_label, const SimOptions& opt = {}) {
  if (static_cast<NodeId>(programs.size()) != g.n())
    throw SimError("run_protocol: need exactly one program per node");
  if (opt.beta < 1 || opt.beta > kMaxWords)
    throw SimError("beta out of range [1," + std::to_string(kMaxWords) + "]");
  const std::int64_t cap = opt.max_rounds > 0 ? opt.max_rounds : default_round_cap(g.n());

  static thread_local detail::EngineCore core;
  core.reset(g, opt.beta);
  Mailbox mb(core);

  for (NodeId v = 0; v < g.n(); ++v) {
    if (core.halted[v]) continue;
    core.current = v;
    programs[static_cast<std::size_t>(v)].on_start(mb);
  }

  std::vector<detail::EngineCore::Pending> delivery;
  std::vector<NodeId> active;
  std::vector<char> in_active(g.n(), 0);

  while (core.halted_count < g.n()) {
    std::int64_t next = -1;
    if (!core.pending.empty()) next = core.round + 1;
    while (!core.wakes.empty()) {
      auto [r, v] = core.wakes.top();
      if (core.halted[v] || core.wake_round[v] != r) {
        core.wakes.pop();  // stale entry
        continue;
      }
      if (next < 0 || r < next) next = r;
      break;
    }
    if (next < 0)
      throw SimError("protocol stuck: " + std::to_string(g.n() - core.halted_count) +
                     " programs have not halted but no messages or wake-ups remain (round " +
                     std::to_string(core.round) + ")");
    if (next > cap)
      throw SimError("max_rounds exceeded: protocol would pass round " + std::to_string(cap));

    core.round = next;
    delivery.clear();
    std::swap(delivery, core.pending);
    active.clear();
    for (const auto& d : delivery) {
      if (core.halted[d.to])
        throw SimError("message from node " + std::to_string(d.m.from) + " delivered to halted node " +
                       std::to_string(d.to) + " in round " + std::to_string(core.round));
      if (!in_active[d.to]) {
        in_active[d.to] = 1;
        active.push_back(d.to);
      }
      core.inbox[d.to].push_back(d.m);
    }
    while (!core.wakes.empty() && core.wakes.top().first == core.round) {
      auto [r, v] = core.wakes.top();
      core.wakes.pop();
      if (core.halted[v] || core.wake_round[v] != r) continue;
      core.wake_round[v] = -1;
      if (!in_active[v]) {
        in_active[v] = 1;
        active.push_back(v);
      }
    }
    std::sort(active.begin(), active.end());

    for (NodeId v : active) {
      core.current = v;
      programs[static_cast<std::size_t>(v)].on_round(mb, std::span<const Msg>(core.inbox[v]));
      core.inbox[v].clear();
      in_active[v] = 0;
    }
  }
  if (!core.pending.empty())
    throw SimError("protocol ended with " + std::to_string(core.pending.size()) +
                   " messages in flight to a halted network");

  RunStats stats{core.round, core.messages};
  ledger.add_measured(phase_label, stats.rounds, stats.messages);
  return stats;
}

}  // namespace congest
