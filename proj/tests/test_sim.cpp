#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "congest/broadcast.hpp"
#include "congest/graph.hpp"
#include "congest/ledger.hpp"
#include "congest/sim.hpp"
#include "support/test_util.hpp"

using namespace congest;

namespace {

Graph path_graph(NodeId n) {
  std::vector<EdgeSpec> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, static_cast<NodeId>(i + 1), 1});
  return Graph::from_edges(false, n, std::move(edges));
}

struct HaltNow {
  void on_start(Mailbox& mb) { mb.halt(); }
  void on_round(Mailbox&, std::span<const Msg>) {}
};

// One token starts at node 0 and floods away from its origin.
struct Flood {
  bool seen = false;
  void on_start(Mailbox& mb) {
    if (mb.self() == 0) {
      seen = true;
      forward(mb, -1);
    }
  }
  void on_round(Mailbox& mb, std::span<const Msg> in) {
    if (!in.empty() && !seen) {
      seen = true;
      forward(mb, in.front().via);
    }
    mb.halt();
  }
  const Graph* g = nullptr;
  void forward(Mailbox& mb, int except_slot) {
    auto ch = g->channels(mb.self());
    for (int s = 0; s < static_cast<int>(ch.size()); ++s) {
      if (s != except_slot) mb.send(s, {1});
    }
    if (mb.self() == 0) mb.halt();
  }
};

struct DoubleSend {
  void on_start(Mailbox& mb) {
    if (mb.self() == 0) {
      mb.send(0, {1});
      mb.send(0, {2});  // second message on the same edge: must throw
    }
    mb.halt();
  }
  void on_round(Mailbox&, std::span<const Msg>) {}
};

struct FatSend {
  void on_start(Mailbox& mb) {
    if (mb.self() == 0) mb.send(0, {1, 2, 3, 4});
    mb.halt();
  }
  void on_round(Mailbox&, std::span<const Msg>) {}
};

struct NeverHalt {
  void on_start(Mailbox&) {}
  void on_round(Mailbox&, std::span<const Msg>) {}
};

struct PingForever {
  void on_start(Mailbox& mb) {
    if (mb.self() == 0) mb.send(0, {1});
  }
  void on_round(Mailbox& mb, std::span<const Msg> in) {
    if (!in.empty()) mb.send(in.front().via, {1});
  }
};

}  // namespace

TEST_CASE("everyone halts immediately -> 0 measured rounds") {
  Graph g = path_graph(5);
  std::vector<HaltNow> p(5);
  RoundLedger ledger;
  RunStats st = run_protocol(g, p, ledger, "idle");
  CHECK(st.rounds == 0);
  CHECK(st.messages == 0);
  CHECK(ledger.find("idle")->measured_rounds == 0);
}

TEST_CASE("token flood on a path of 5 halts after 4 rounds") {
  Graph g = path_graph(5);
  std::vector<Flood> p(5);
  for (auto& x : p) x.g = &g;
  RoundLedger ledger;
  RunStats st = run_protocol(g, p, ledger, "flood");
  CHECK(st.rounds == 4);
  for (const Flood& x : p) CHECK(x.seen);
}

TEST_CASE("bandwidth violations are hard errors naming node, edge, round") {
  Graph g = path_graph(3);
  RoundLedger ledger;
  SUBCASE("two messages on one edge in one round") {
    std::vector<DoubleSend> p(3);
    CHECK_THROWS_WITH_AS(run_protocol(g, p, ledger, "x"),
                         doctest::Contains("two messages on edge (0,1) in round 0"), SimError);
  }
  SUBCASE("message wider than beta") {
    std::vector<FatSend> p(3);
    CHECK_THROWS_WITH_AS(run_protocol(g, p, ledger, "x"), doctest::Contains("beta=3"),
                         SimError);
  }
}

TEST_CASE("stuck protocol and round cap are errors") {
  Graph g = path_graph(3);
  RoundLedger ledger;
  SUBCASE("no messages, no wakes, not halted") {
    std::vector<NeverHalt> p(3);
    CHECK_THROWS_WITH_AS(run_protocol(g, p, ledger, "x"), doctest::Contains("stuck"),
                         SimError);
  }
  SUBCASE("max_rounds exceeded") {
    std::vector<PingForever> p(3);
    SimOptions opt;
    opt.max_rounds = 10;
    CHECK_THROWS_WITH_AS(run_protocol(g, p, ledger, "x", opt),
                         doctest::Contains("max_rounds exceeded"), SimError);
  }
  SUBCASE("CONGEST_MAX_ROUNDS overrides the default cap") {
    setenv("CONGEST_MAX_ROUNDS", "7", 1);
    CHECK(default_round_cap(3) == 7);
    std::vector<PingForever> p(3);
    CHECK_THROWS_WITH_AS(run_protocol(g, p, ledger, "x"),
                         doctest::Contains("max_rounds exceeded"), SimError);
    unsetenv("CONGEST_MAX_ROUNDS");
    CHECK(default_round_cap(3) == 50 * 3 * 2 * 2 * 2 * 2);
  }
}

TEST_CASE("ledger: modeled charges are additive and separate from measured") {
  RoundLedger ledger;
  ledger.charge_modeled("blocker", 0);
  CHECK(ledger.total() == 0);
  // |S| * h * ceil(log2 n)^2 with |S|=10, h=16, n=256
  ledger.charge_modeled("blocker", 10 * 16 * 8 * 8);
  CHECK(ledger.find("blocker")->modeled_rounds == 10240);
  ledger.charge_modeled("blocker", 10);
  CHECK(ledger.find("blocker")->modeled_rounds == 10250);
  CHECK(ledger.total_measured() == 0);
  CHECK(ledger.total() == 10250);
  CHECK_THROWS_AS(ledger.charge_modeled("blocker", -1), std::invalid_argument);
}

TEST_CASE("ledger CSV shape") {
  RoundLedger ledger;
  ledger.add_measured("alpha", 5, 17);
  ledger.charge_modeled("beta", 3);
  std::string csv = ledger.to_csv();
  CHECK(csv == "phase,measured_rounds,modeled_rounds,messages\n"
               "alpha,5,0,17\n"
               "beta,0,3,0\n"
               "total,5,3,17\n");
}

TEST_CASE("broadcast: K=0 stays within 2n and every view is empty") {
  for (NodeId n : {2, 4, 7}) {
    Graph g = path_graph(n);
    RoundLedger ledger;
    std::vector<std::vector<std::int64_t>> items(n);
    auto view = broadcast_all(g, items, ledger, "bc");
    CHECK(view.empty());
    CHECK(ledger.find("bc")->measured_rounds <= 2 * n);
  }
}

TEST_CASE("broadcast: one item on a path of 4 arrives everywhere within K+2n") {
  Graph g = path_graph(4);
  for (NodeId holder = 0; holder < 4; ++holder) {
    RoundLedger ledger;
    std::vector<std::vector<std::int64_t>> items(4);
    items[holder].push_back(42);
    auto view = broadcast_all(g, items, ledger, "bc");
    REQUIRE(view.size() == 1);
    CHECK(view[0].origin == holder);
    CHECK(view[0].value == 42);
    CHECK(ledger.find("bc")->measured_rounds <= 1 + 8);
  }
}

TEST_CASE("broadcast: scattered items, canonical order, K+2n bound") {
  Graph g = gen_random(60, 4, 5, 20, false);
  testutil::Rng rng(99);
  std::vector<std::vector<std::int64_t>> items(60);
  std::int64_t k = 0;
  while (k < 100) {
    NodeId v = static_cast<NodeId>(rng.below(60));
    items[v].push_back(static_cast<std::int64_t>(rng.next() & 0xffff));
    ++k;
  }
  RoundLedger ledger;
  auto view = broadcast_all(g, items, ledger, "bc");
  REQUIRE(static_cast<std::int64_t>(view.size()) == k);
  CHECK(std::is_sorted(view.begin(), view.end(), [](const BcastItem& a, const BcastItem& b) {
    return std::tie(a.origin, a.index) < std::tie(b.origin, b.index);
  }));
  // set equality with the input
  for (const BcastItem& it : view)
    CHECK(items[it.origin][static_cast<std::size_t>(it.index)] == it.value);
  CHECK(ledger.find("bc")->measured_rounds <= k + 120);
}

TEST_CASE("broadcast on a single node") {
  Graph g = Graph::from_edges(false, 1, {});
  RoundLedger ledger;
  std::vector<std::vector<std::int64_t>> items(1);
  items[0] = {7, 8};
  auto view = broadcast_all(g, items, ledger, "bc");
  REQUIRE(view.size() == 2);
  CHECK(view[1].value == 8);
  CHECK(ledger.find("bc")->measured_rounds == 0);
}

TEST_CASE("bfs tree: parents are the smallest-id neighbor one layer up") {
  Graph g = Graph::from_edges(false, 5,
                              {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}, {3, 4, 1}});
  BfsTree t = bfs_tree(g);
  CHECK(t.parent[0] == -1);
  CHECK(t.parent[1] == 0);
  CHECK(t.parent[2] == 0);
  CHECK(t.parent[3] == 1);  // 1 and 2 are both one layer up; 1 is smaller
  CHECK(t.parent[4] == 3);
  CHECK(t.depth[4] == 3);
}

TEST_CASE("engine determinism: identical runs, identical ledgers") {
  Graph g = gen_random(40, 4, 8, 20, false);
  std::vector<std::vector<std::int64_t>> items(40);
  items[13] = {1, 2, 3};
  items[27] = {9};
  auto run_once = [&] {
    RoundLedger ledger;
    broadcast_all(g, items, ledger, "bc");
    return ledger.to_csv();
  };
  CHECK(run_once() == run_once());
}
