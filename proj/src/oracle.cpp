#include "cycletrace/oracle.hpp"

#include <algorithm>
#include <map>

namespace cycletrace::oracle {

namespace {

void require(const MultiGraph& g, const SmallInstanceBudget& budget) {
  if (!budget.admits(g)) {
    throw Error(Errc::budget_exceeded, "instance has " + std::to_string(g.vertex_count()) + " vertices, " +
                                           std::to_string(g.edge_count()) + " edges; budget is " +
                                           std::to_string(budget.max_vertices) + "/" +
                                           std::to_string(budget.max_edges));
  }
}

using Adjacency = std::map<DealerId, std::vector<Edge>>;

Adjacency adjacency(const std::vector<Edge>& edges) {
  Adjacency adj;
  for (const auto& e : edges) adj[e.seller].push_back(e);
  return adj;
}

void extend(const Adjacency& adj, const DealerId& at, const DealerId& to, std::vector<DealerId>& visited,
            std::vector<Edge>& path, std::vector<std::vector<Edge>>& out) {
  if (at == to && !path.empty()) {
    out.push_back(path);
    return;
  }
  const auto it = adj.find(at);
  if (it == adj.end()) return;
  for (const auto& e : it->second) {
    if (std::find(visited.begin(), visited.end(), e.buyer) != visited.end()) continue;
    visited.push_back(e.buyer);
    path.push_back(e);
    extend(adj, e.buyer, to, visited, path, out);
    path.pop_back();
    visited.pop_back();
  }
}

std::vector<std::vector<Edge>> simple_paths(const std::vector<Edge>& edges, const DealerId& from,
                                            const DealerId& to) {
  std::vector<std::vector<Edge>> out;
  if (from == to) return out;
  const Adjacency adj = adjacency(edges);
  std::vector<DealerId> visited{from};
  std::vector<Edge> path;
  extend(adj, from, to, visited, path, out);
  return out;
}

}  // namespace

std::vector<BottleneckPath> enumerate_simple_paths(const MultiGraph& g, const DealerId& from,
                                                   const DealerId& to, const SmallInstanceBudget& budget) {
  require(g, budget);
  std::vector<BottleneckPath> out;
  for (auto& p : simple_paths(g.edges(), from, to)) {
    Money lo = p.front().value;
    Money hi = p.front().value;
    for (const auto& e : p) {
      lo = std::min(lo, e.value);
      hi = std::max(hi, e.value);
    }
    out.push_back({std::move(p), lo, hi});
  }
  return out;
}

std::vector<CycleCandidate> enumerate_cycles_through(const MultiGraph& g, const EdgeKey& e,
                                                     const SmallInstanceBudget& budget) {
  require(g, budget);
  const auto edges = g.edges();
  const auto closing = std::find_if(edges.begin(), edges.end(), [&](const Edge& x) { return x.key() == e; });
  if (closing == edges.end()) throw Error(Errc::missing_edge, "closing edge absent");

  std::vector<CycleCandidate> out;
  for (auto& p : simple_paths(edges, e.buyer, e.seller)) {
    CycleCandidate c;
    c.edges.push_back(*closing);
    c.edges.insert(c.edges.end(), p.begin(), p.end());
    c.critical_value = c.edges.front().value;
    c.max_value = c.edges.front().value;
    for (const auto& x : c.edges) {
      c.critical_value = std::min(c.critical_value, x.value);
      c.max_value = std::max(c.max_value, x.value);
    }
    c.phi = c.max_value - c.critical_value;
    c.discovery_index = out.size();
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<BottleneckPath> brute_widest_path(const MultiGraph& g, const DealerId& from, const DealerId& to,
                                                const SmallInstanceBudget& budget) {
  auto keys = [](const BottleneckPath& p) {
    std::vector<EdgeKey> k;
    for (const auto& e : p.edges) k.push_back(e.key());
    return k;
  };
  std::optional<BottleneckPath> best;
  for (auto& p : enumerate_simple_paths(g, from, to, budget)) {
    if (!best || p.bottleneck > best->bottleneck ||
        (p.bottleneck == best->bottleneck && keys(p) < keys(*best))) {
      best = std::move(p);
    }
  }
  return best;
}

bool brute_has_cycle(const MultiGraph& g, const SmallInstanceBudget& budget) {
  require(g, budget);
  const auto edges = g.edges();
  for (const auto& e : edges) {
    // A cycle through e exists iff some simple path leads back from its head.
    if (!simple_paths(edges, e.buyer, e.seller).empty()) return true;
  }
  return false;
}

std::uint64_t count_walks(const MultiGraph& g, const DealerId& from, const DealerId& to,
                          const EdgeKey& excluded) {
  const auto names = g.vertices();
  const std::size_t n = names.size();
  auto index = [&](const DealerId& d) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), d) - names.begin());
  };
  using Matrix = std::vector<std::vector<std::uint64_t>>;
  Matrix a(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& e : g.edges()) {
    if (e.key() != excluded) ++a[index(e.seller)][index(e.buyer)];
  }

  const std::size_t s = index(from);
  const std::size_t t = index(to);
  // Row vector of walk counts from s, advanced one step at a time.
  std::vector<std::uint64_t> row(n, 0);
  row[s] = 1;
  std::uint64_t total = 0;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) next[j] += row[i] * a[i][j];
    }
    row = std::move(next);
    total += row[t];
  }
  return total;
}

}  // namespace cycletrace::oracle

namespace cycletrace::oracle {

VerifyReport verify_wcd(std::span<const Transaction> ledger, const SmallInstanceBudget& budget) {
  VerifyReport report;
  {
    MultiGraph full;
    for (const auto& t : ledger) full.add_edge(t);
    report.oracle_applied = budget.admits(full);
  }

  std::optional<Money> expected_phi;
  WcdOptions options;
  options.cross_check_cycles = true;
  options.before_delete_cycle = [&](const MultiGraph& g, const EdgeKey& e) {
    expected_phi.reset();
    if (!report.oracle_applied) return;
    const auto cycles = enumerate_cycles_through(g, e, budget);
    for (const auto& c : cycles) {
      if (!expected_phi || c.phi < *expected_phi) expected_phi = c.phi;
    }
  };
  options.on_delete_cycle = [&](const EdgeKey&, const DeleteCycleOutcome& outcome) {
    ++report.delete_cycle_calls;
    const auto tag = "removal " + std::to_string(outcome.removal.iteration) + ": ";
    const auto& paths = outcome.candidates.paths;
    for (std::size_t i = 1; i < paths.size(); ++i) {
      if (!(paths[i].max_edge_value < paths[i - 1].max_edge_value)) {
        report.mismatches.push_back(tag + "candidate max values not strictly decreasing");
      }
    }
    if (expected_phi && outcome.chosen.phi != *expected_phi) {
      report.mismatches.push_back(tag + "flow value " + std::to_string(outcome.chosen.phi.paise()) +
                                  " paise, exhaustive minimum " + std::to_string(expected_phi->paise()));
    }
    for (const auto& [dealer, net] : net_tax_position(outcome.removal)) {
      if (net.paise() != 0) report.mismatches.push_back(tag + "non-zero net tax for " + dealer.str());
    }
  };

  WcdResult result;
  try {
    result = run_wcd(ledger, options);
  } catch (const Error& e) {
    report.mismatches.push_back(std::string("run aborted: ") + e.what());
    return report;
  }

  if (result.residual.has_cycle()) report.mismatches.push_back("residual has a cycle");
  if (report.oracle_applied && brute_has_cycle(result.residual, budget)) {
    report.mismatches.push_back("residual has a cycle (exhaustive check)");
  }
  for (const auto& v : conservation_violations(ledger, result)) {
    report.mismatches.push_back("conservation broken on " + v.key.seller.str() + "->" + v.key.buyer.str() +
                                "@" + v.key.time.iso());
  }
  return report;
}

}  // namespace cycletrace::oracle
