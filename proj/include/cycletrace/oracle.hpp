#pragma once

// Exhaustive reference implementations. They read the graph only through
// MultiGraph::edges(), never through the adjacency indexes the engines use.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cycletrace/wcd.hpp"

namespace cycletrace::oracle {

struct SmallInstanceBudget {
  std::size_t max_vertices = 8;
  std::size_t max_edges = 14;
  /// Upper bound for values drawn by instance generators; not enforced on
  /// graphs handed to the oracles.
  Money max_value = Money::from_rupees(20);

  bool admits(const MultiGraph& g) const {
    return g.vertex_count() <= max_vertices && g.edge_count() <= max_edges;
  }
};

/// Every simple directed cycle containing `e`, over every parallel-edge
/// choice, closed as [e, path...]. Throws Error{budget_exceeded}.
std::vector<CycleCandidate> enumerate_cycles_through(const MultiGraph& g, const EdgeKey& e,
                                                     const SmallInstanceBudget& budget = {});

/// Every simple from -> to path over every parallel-edge choice.
std::vector<BottleneckPath> enumerate_simple_paths(const MultiGraph& g, const DealerId& from,
                                                   const DealerId& to,
                                                   const SmallInstanceBudget& budget = {});

/// A maximum-bottleneck from -> to path. Among equally wide paths the
/// lexicographically smallest edge-key sequence wins, so it coincides with
/// max_min_path whenever the widest path is unique.
std::optional<BottleneckPath> brute_widest_path(const MultiGraph& g, const DealerId& from,
                                                const DealerId& to,
                                                const SmallInstanceBudget& budget = {});

/// Tries every simple vertex sequence for a closing edge.
bool brute_has_cycle(const MultiGraph& g, const SmallInstanceBudget& budget = {});

/// Sum over k of (A^k)[from][to] with A the edge-multiplicity matrix of g
/// minus `excluded`. Equals the number of simple from -> to paths when that
/// graph is acyclic.
std::uint64_t count_walks(const MultiGraph& g, const DealerId& from, const DealerId& to,
                          const EdgeKey& excluded);

struct VerifyReport {
  bool oracle_applied = false;  // false when the input exceeded the budget
  std::size_t delete_cycle_calls = 0;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Replays `ledger` through run_wcd and cross-checks it. Always: targeted vs
/// full cycle detection, acyclic residual, strictly decreasing candidate max
/// values, value conservation, zero net tax inside each removal. When the
/// whole ledger fits `budget`: each chosen cycle's flow value against the
/// exhaustive minimum and the residual against brute_has_cycle.
VerifyReport verify_wcd(std::span<const Transaction> ledger, const SmallInstanceBudget& budget = {});

}  // namespace cycletrace::oracle
