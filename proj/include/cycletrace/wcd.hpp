#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cycletrace/cycle_removal.hpp"

namespace cycletrace {

struct WcdStats {
  std::size_t edges_in = 0;
  std::size_t edges_surviving = 0;
  std::size_t cycles_cancelled = 0;
  Money total_cancelled;  // sum over removals of subtracted * cycle length
};

struct WcdResult {
  MultiGraph residual;  // acyclic
  std::vector<RemovalRecord> removals;
  WcdStats stats;
};

struct WcdOptions {
  /// Run the full-graph DFS next to the targeted reachability check after
  /// every insertion and throw Error{inconsistent_state} if they disagree.
  bool cross_check_cycles = false;
  /// Called after every cancellation with the triggering edge key.
  std::function<void(const EdgeKey& trigger, const DeleteCycleOutcome&)> on_delete_cycle;
  /// Called before each cancellation with the graph as it stands.
  std::function<void(const MultiGraph& before, const EdgeKey& trigger)> before_delete_cycle;
};

/// Replays `ledger` (sorted by time) into an initially empty graph. After each
/// insertion of edge e = u -> v, cancels minimum-flow-value cycles through e
/// while e survives and v still reaches u. Throws Error{unsorted_ledger}.
WcdResult run_wcd(std::span<const Transaction> ledger, const WcdOptions& options = {});

using PairTotals = std::map<std::pair<DealerId, DealerId>, Money>;

/// Sum of parallel-edge values per ordered (seller, buyer) pair.
PairTotals aggregate_pairs(const MultiGraph& g);

using NetPositions = std::map<DealerId, SignedMoney>;

/// Output tax received as seller minus input tax paid as buyer, per dealer.
NetPositions net_tax_position(std::span<const Transaction> ledger);
NetPositions net_tax_position(const MultiGraph& g);
/// Restricted to the flow a single removal subtracted.
NetPositions net_tax_position(const RemovalRecord& removal);

struct ConservationViolation {
  EdgeKey key;
  Money original;
  Money residual;
  Money subtracted;
};

/// Every input edge must satisfy original = residual + total subtracted.
std::vector<ConservationViolation> conservation_violations(std::span<const Transaction> ledger,
                                                           const WcdResult& result);

/// Residual edges as ledger rows, ordered by (time, serial).
std::vector<Transaction> to_transactions(const MultiGraph& g);

}  // namespace cycletrace
