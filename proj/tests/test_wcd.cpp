#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cycletrace/io.hpp"
#include "cycletrace/oracle.hpp"
#include "cycletrace/wcd.hpp"
#include "support.hpp"

using namespace cycletrace;
using test::dealer;
using test::rs;
using test::tx;

TEST_CASE("Table I replays without removals") {
  const auto ledger = test::table1_ledger();
  const auto result = run_wcd(ledger, {.cross_check_cycles = true});
  CHECK(result.removals.empty());
  CHECK(result.residual == test::graph_of(ledger));
  CHECK(result.stats.edges_in == 5);
  CHECK(result.stats.edges_surviving == 5);
}

TEST_CASE("uniform triangle closes on the last edge and vanishes") {
  const std::vector<Transaction> ledger{tx(1, "u", "v", 1, 10), tx(2, "v", "w", 2, 10), tx(3, "w", "u", 3, 10)};
  std::vector<EdgeKey> triggers;
  WcdOptions opts;
  opts.on_delete_cycle = [&](const EdgeKey& e, const DeleteCycleOutcome&) { triggers.push_back(e); };
  const auto result = run_wcd(ledger, opts);
  REQUIRE(result.removals.size() == 1);
  CHECK(triggers == std::vector<EdgeKey>{EdgeKey{dealer("w"), dealer("u"), test::at(3)}});
  CHECK(result.residual.empty());
  CHECK(result.stats.total_cancelled == rs(30));
}

TEST_CASE("diamond golden trace") {
  const auto ledger = test::diamond_ledger();
  const auto result = run_wcd(ledger, {.cross_check_cycles = true});
  REQUIRE(result.removals.size() == 2);
  CHECK(result.removals[0].subtracted == rs(8));
  CHECK(result.removals[1].subtracted == rs(2));
  CHECK(result.removals[0].iteration == 1);
  CHECK(result.removals[1].iteration == 2);
  CHECK(aggregate_pairs(result.residual) ==
        PairTotals{{{dealer("a"), dealer("u")}, rs(1)}, {{dealer("b"), dealer("u")}, rs(3)},
                   {{dealer("v"), dealer("b")}, rs(5)}});
  CHECK(conservation_violations(ledger, result).empty());
  CHECK(io::to_jsonl(run_wcd(ledger).removals) == io::to_jsonl(result.removals));
}

TEST_CASE("unsorted ledger is rejected") {
  const std::vector<Transaction> ledger{tx(1, "a", "b", 5, 1), tx(2, "b", "c", 4, 1)};
  try {
    run_wcd(ledger);
    FAIL("unsorted accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsorted_ledger);
  }
}

TEST_CASE("duplicate keys in a hand-built ledger propagate") {
  const std::vector<Transaction> ledger{tx(1, "a", "b", 5, 1), tx(2, "a", "b", 5, 2)};
  CHECK_THROWS_AS(run_wcd(ledger), Error);
}

TEST_CASE("aggregate_pairs") {
  MultiGraph g;
  CHECK(aggregate_pairs(g).empty());
  g.add_edge(tx(1, "a", "b", 1, 10));
  g.add_edge(tx(2, "a", "b", 2, 15));
  CHECK(aggregate_pairs(g) == PairTotals{{{dealer("a"), dealer("b")}, rs(25)}});

  const auto totals = aggregate_pairs(test::graph_of(test::table1_ledger()));
  CHECK(totals.size() == 5);
  CHECK(totals.at({dealer("a"), dealer("b")}) == rs(15000));
  CHECK(totals.at({dealer("y"), dealer("m")}) == rs(14000));
}

TEST_CASE("net tax position along a supply chain") {
  const std::vector<Transaction> chain{tx(1, "producer", "manufacturer", 1, 120),
                                       tx(2, "manufacturer", "retailer", 2, 180),
                                       tx(3, "retailer", "consumer", 3, 200)};
  const auto net = net_tax_position(chain);
  CHECK(net.at(dealer("producer")) == SignedMoney(rs(120)));
  CHECK(net.at(dealer("manufacturer")) == SignedMoney(rs(60)));
  CHECK(net.at(dealer("retailer")) == SignedMoney(rs(20)));
  CHECK(net.at(dealer("consumer")) == -SignedMoney(rs(200)));
  // The government collects the full ₹200 across the chain.
  CHECK((net.at(dealer("producer")) + net.at(dealer("manufacturer")) + net.at(dealer("retailer"))) ==
        SignedMoney(rs(200)));

  const std::vector<Transaction> triangle{tx(1, "a", "b", 1, 10), tx(2, "b", "c", 2, 10), tx(3, "c", "a", 3, 10)};
  for (const auto& [d, v] : net_tax_position(triangle)) CHECK(v.paise() == 0);

  MultiGraph lonely;
  lonely.add_vertex(dealer("z"));
  CHECK(net_tax_position(lonely).at(dealer("z")).paise() == 0);
}

TEST_CASE("fuzz: acyclic residual, conservation, zero net inside removals, replay determinism") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 400; ++round) {
    const auto ledger = test::random_ledger(rng, 10, 60, 30);
    const auto result = run_wcd(ledger, {.cross_check_cycles = true});
    REQUIRE_FALSE(result.residual.has_cycle());
    REQUIRE(conservation_violations(ledger, result).empty());
    for (const auto& r : result.removals) {
      for (const auto& [d, v] : net_tax_position(r)) REQUIRE(v.paise() == 0);
    }
    REQUIRE(io::to_jsonl(run_wcd(ledger).removals) == io::to_jsonl(result.removals));
  }
}

TEST_CASE("every burst cancels a minimum flow value cycle through the trigger") {
  std::mt19937_64 rng(8);
  std::size_t checked = 0;
  for (int round = 0; round < 600; ++round) {
    const auto ledger = test::random_ledger(rng, 6, 13, 20);
    std::optional<Money> expected;
    WcdOptions opts;
    opts.before_delete_cycle = [&](const MultiGraph& g, const EdgeKey& e) {
      const auto all = oracle::enumerate_cycles_through(g, e, {8, 14});
      expected.reset();
      for (const auto& c : all) {
        if (!expected || c.phi < *expected) expected = c.phi;
      }
    };
    opts.on_delete_cycle = [&](const EdgeKey&, const DeleteCycleOutcome& o) {
      REQUIRE(expected);
      REQUIRE(o.chosen.phi == *expected);
      ++checked;
    };
    run_wcd(ledger, opts);
  }
  CHECK(checked > 100);
}

TEST_CASE("rerunning on the residual in topological order cancels nothing") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const auto ledger = test::random_ledger(rng, 12, 80, 40);
    const auto result = run_wcd(ledger);
    auto edges = result.residual.edges();

    // Kahn order over the collapsed digraph.
    std::map<DealerId, int> indegree;
    std::map<DealerId, std::set<DealerId>> succ;
    for (const auto& v : result.residual.vertices()) indegree[v];
    for (const auto& e : edges) {
      if (succ[e.seller].insert(e.buyer).second) ++indegree[e.buyer];
    }
    std::vector<DealerId> ready, order;
    for (const auto& [v, d] : indegree) {
      if (d == 0) ready.push_back(v);
    }
    while (!ready.empty()) {
      const DealerId v = ready.back();
      ready.pop_back();
      order.push_back(v);
      for (const auto& n : succ[v]) {
        if (--indegree[n] == 0) ready.push_back(n);
      }
    }
    REQUIRE(order.size() == result.residual.vertex_count());
    std::map<DealerId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
      return std::tie(pos[a.seller], pos[a.buyer], a.time) < std::tie(pos[b.seller], pos[b.buyer], b.time);
    });
    std::vector<Transaction> replay;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      replay.push_back({i + 1, edges[i].seller, edges[i].buyer, test::at(static_cast<unsigned>(i + 1)), edges[i].value});
    }
    REQUIRE(run_wcd(replay).removals.empty());
  }
}

TEST_CASE("residual exports as a valid ledger") {
  const auto result = run_wcd(test::diamond_ledger());
  const auto rows = to_transactions(result.residual);
  const auto reparsed = parse_ledger(serialize_ledger(rows));
  CHECK(reparsed.transactions == rows);
  CHECK(rows.size() == 3);
  CHECK(rows[0].serial == 2);
}
