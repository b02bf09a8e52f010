#pragma once

#include <cstddef>
#include <vector>

#include "cycletrace/widest_path.hpp"

namespace cycletrace {

/// Widest v -> u paths in discovery order. Max edge values strictly decrease.
struct CandidateSet {
  std::vector<BottleneckPath> paths;
};

/// A candidate path closed by the triggering edge e (stored first).
struct CycleCandidate {
  std::vector<Edge> edges;
  Money phi;             // max_value - critical_value
  Money critical_value;  // min edge value, the amount cancelled
  Money max_value;
  std::size_t discovery_index = 0;
};

/// One cancelled cycle, in execution order.
struct RemovalRecord {
  std::size_t iteration = 0;  // 1-based over a whole run
  std::vector<EdgeKey> edges;
  Money subtracted;  // per edge
  Money phi;
  std::vector<Money> before;
  std::vector<Money> after;  // zero means the edge was deleted
};

/// Runs on a private copy G'' of `g`: repeatedly takes the widest path from
/// e.buyer to e.seller, records it, then drops every edge of G'' valued at
/// least that path's max edge. The closing edge e itself is never dropped;
/// every cycle of `g` must pass through it. Stops once no path remains.
///
/// Throws Error{missing_edge} if e is absent, Error{no_cycle_through_edge}
/// if no first path exists.
CandidateSet collect_candidates(const MultiGraph& g, const EdgeKey& e);

/// Closes each path with e and returns the cycle of minimum flow value.
/// Ties: smaller max value, then earlier discovery. Throws
/// Error{empty_candidate_set}.
CycleCandidate select_min_flow_cycle(const CandidateSet& candidates, const Edge& e);

/// Subtracts the cycle's critical value from each of its edges in `g`,
/// deleting those that reach zero. Validates before mutating; throws
/// Error{inconsistent_state} and leaves `g` untouched on mismatch.
RemovalRecord cancel_cycle(MultiGraph& g, const CycleCandidate& cycle, std::size_t iteration);

struct DeleteCycleOutcome {
  CandidateSet candidates;
  CycleCandidate chosen;
  RemovalRecord removal;
};

/// One full pass: collect, select, cancel.
DeleteCycleOutcome delete_cycle(MultiGraph& g, const EdgeKey& e, std::size_t iteration);

}  // namespace cycletrace
