#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cycletrace/wcd.hpp"

namespace cycletrace::test {

inline DealerId dealer(const std::string& s) { return DealerId(s); }

inline Timestamp at(unsigned second) {
  return Timestamp::from_civil(2015, 1, 1, 0, 0, 0) + std::chrono::seconds(second);
}

inline Transaction tx(std::uint64_t serial, const std::string& seller, const std::string& buyer,
                      unsigned second, std::int64_t rupees) {
  return {serial, dealer(seller), dealer(buyer), at(second), Money::from_rupees(rupees)};
}

inline Money rs(std::int64_t rupees) { return Money::from_rupees(rupees); }

/// v->a ₹8, a->u ₹9, v->b ₹7, b->u ₹5, then the closing edge u->v ₹10.
inline std::vector<Transaction> diamond_ledger() {
  return {tx(1, "v", "a", 1, 8), tx(2, "a", "u", 2, 9), tx(3, "v", "b", 3, 7), tx(4, "b", "u", 4, 5),
          tx(5, "u", "v", 5, 10)};
}

inline std::vector<Transaction> table1_ledger() {
  auto t = [](std::uint64_t serial, const char* s, const char* b, unsigned day, unsigned h, unsigned m,
              unsigned sec, std::int64_t rupees) {
    return Transaction{serial, dealer(s), dealer(b), Timestamp::from_civil(2015, 1, day, h, m, sec),
                       Money::from_rupees(rupees)};
  };
  return {t(1, "m", "n", 14, 10, 30, 44, 10000), t(2, "a", "b", 14, 13, 1, 54, 15000),
          t(3, "x", "y", 15, 9, 2, 52, 12000), t(4, "y", "m", 15, 10, 9, 11, 14000),
          t(5, "b", "k", 16, 10, 10, 10, 10000)};
}

inline MultiGraph graph_of(const std::vector<Transaction>& ledger) {
  MultiGraph g;
  for (const auto& t : ledger) g.add_edge(t);
  return g;
}

/// Random chronological ledger: up to `max_dealers` dealers, `edges`
/// transactions, values in [1, max_rupees] whole rupees, no self-loops.
inline std::vector<Transaction> random_ledger(std::mt19937_64& rng, std::size_t max_dealers, std::size_t edges,
                                              std::int64_t max_rupees) {
  std::uniform_int_distribution<std::size_t> pick(0, max_dealers - 1);
  std::uniform_int_distribution<std::int64_t> value(1, max_rupees);
  std::vector<Transaction> out;
  for (std::size_t i = 0; i < edges; ++i) {
    const auto a = pick(rng);
    auto b = pick(rng);
    while (b == a) b = pick(rng);
    out.push_back(tx(i + 1, "d" + std::to_string(a), "d" + std::to_string(b), static_cast<unsigned>(i + 1),
                     value(rng)));
  }
  return out;
}

/// Random multigraph with `n` vertices (all present) and `m` edges.
inline MultiGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m, std::int64_t max_rupees) {
  MultiGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(dealer("d" + std::to_string(i)));
  for (const auto& t : random_ledger(rng, n, m, max_rupees)) g.add_edge(t);
  return g;
}

struct ClosedInstance {
  MultiGraph graph;
  EdgeKey closing;
};

/// A random DAG (edges follow a random vertex rank) plus one back edge
/// u -> v such that v reaches u, so every cycle passes through that edge.
inline ClosedInstance random_closed_instance(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_edges,
                                             std::int64_t max_rupees) {
  std::uniform_int_distribution<std::int64_t> value(1, max_rupees);
  for (;;) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_vertices)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_edges - 1)(rng);
    std::vector<std::size_t> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);
    auto name = [&](std::size_t i) { return "d" + std::to_string(rank[i]); };

    MultiGraph g;
    std::uniform_int_distribution<std::size_t> pos(0, n - 1);
    for (std::size_t i = 0; i < m; ++i) {
      auto a = pos(rng), b = pos(rng);
      while (a == b) b = pos(rng);
      if (a > b) std::swap(a, b);
      g.add_edge(Transaction{i + 1, dealer(name(a)), dealer(name(b)), at(static_cast<unsigned>(i + 1)),
                             Money::from_rupees(value(rng))});
    }
    auto lo = pos(rng), hi = pos(rng);
    if (lo == hi) continue;
    if (lo > hi) std::swap(lo, hi);
    const DealerId v = dealer(name(lo));
    const DealerId u = dealer(name(hi));
    if (!g.reaches(v, u)) continue;
    const Transaction e{m + 1, u, v, at(static_cast<unsigned>(m + 1)), Money::from_rupees(value(rng))};
    const EdgeKey key = g.add_edge(e);
    return {std::move(g), key};
  }
}

}  // namespace cycletrace::test
