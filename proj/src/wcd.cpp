#include "cycletrace/wcd.hpp"

#include <algorithm>
#include <tuple>

namespace cycletrace {

WcdResult run_wcd(std::span<const Transaction> ledger, const WcdOptions& options) {
  WcdResult out;
  MultiGraph& g = out.residual;

  for (std::size_t i = 0; i < ledger.size(); ++i) {
    const Transaction& t = ledger[i];
    if (i > 0 && t.time < ledger[i - 1].time) {
      throw Error(Errc::unsorted_ledger, "transaction serial " + std::to_string(t.serial) +
                                             " precedes its predecessor in time");
    }
    const EdgeKey e = g.add_edge(t);

    // The graph was acyclic before e arrived, so any cycle runs through e:
    // one exists iff e is still present and its head reaches its tail.
    for (;;) {
      const bool cyclic = g.contains(e) && g.reaches(e.buyer, e.seller);
      if (options.cross_check_cycles && cyclic != g.has_cycle()) {
        throw Error(Errc::inconsistent_state, "targeted and full cycle checks disagree");
      }
      if (!cyclic) break;
      if (options.before_delete_cycle) options.before_delete_cycle(g, e);
      DeleteCycleOutcome outcome = delete_cycle(g, e, out.removals.size() + 1);
      if (options.on_delete_cycle) options.on_delete_cycle(e, outcome);
      out.removals.push_back(std::move(outcome.removal));
    }
  }

  out.stats.edges_in = ledger.size();
  out.stats.edges_surviving = g.edge_count();
  out.stats.cycles_cancelled = out.removals.size();
  for (const auto& r : out.removals) {
    out.stats.total_cancelled += r.subtracted * static_cast<std::int64_t>(r.edges.size());
  }
  return out;
}

PairTotals aggregate_pairs(const MultiGraph& g) {
  PairTotals totals;
  for (const auto& e : g.edges()) totals[{e.seller, e.buyer}] += e.value;
  return totals;
}

namespace {

void credit(NetPositions& net, const DealerId& seller, const DealerId& buyer, Money value) {
  net[seller] += SignedMoney(value);
  net[buyer] -= SignedMoney(value);
}

}  // namespace

NetPositions net_tax_position(std::span<const Transaction> ledger) {
  NetPositions net;
  for (const auto& t : ledger) credit(net, t.seller, t.buyer, t.value);
  return net;
}

NetPositions net_tax_position(const MultiGraph& g) {
  NetPositions net;
  for (const auto& v : g.vertices()) net[v];
  for (const auto& e : g.edges()) credit(net, e.seller, e.buyer, e.value);
  return net;
}

NetPositions net_tax_position(const RemovalRecord& removal) {
  NetPositions net;
  for (const auto& k : removal.edges) credit(net, k.seller, k.buyer, removal.subtracted);
  return net;
}

std::vector<ConservationViolation> conservation_violations(std::span<const Transaction> ledger,
                                                           const WcdResult& result) {
  std::map<EdgeKey, Money> subtracted;
  for (const auto& r : result.removals) {
    for (const auto& k : r.edges) subtracted[k] += r.subtracted;
  }
  std::vector<ConservationViolation> out;
  for (const auto& t : ledger) {
    const EdgeKey key{t.seller, t.buyer, t.time};
    const auto live = result.residual.find(key);
    const Money residual = live ? live->value : Money{};
    const auto it = subtracted.find(key);
    const Money taken = it == subtracted.end() ? Money{} : it->second;
    if (residual + taken != t.value) out.push_back({key, t.value, residual, taken});
  }
  return out;
}

std::vector<Transaction> to_transactions(const MultiGraph& g) {
  std::vector<Transaction> out;
  for (const auto& e : g.edges()) out.push_back({e.serial, e.seller, e.buyer, e.time, e.value});
  std::sort(out.begin(), out.end(), [](const Transaction& a, const Transaction& b) {
    return std::tie(a.time, a.serial, a.seller, a.buyer) < std::tie(b.time, b.serial, b.seller, b.buyer);
  });
  return out;
}

}  // namespace cycletrace
