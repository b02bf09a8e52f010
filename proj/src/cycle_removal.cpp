#include "cycletrace/cycle_removal.hpp"

#include <algorithm>
#include <tuple>

namespace cycletrace {

CandidateSet collect_candidates(const MultiGraph& g, const EdgeKey& e) {
  if (!g.contains(e)) {
    throw Error(Errc::missing_edge, "closing edge absent: " + e.seller.str() + "->" + e.buyer.str());
  }
  MultiGraph scratch = g;
  CandidateSet out;
  while (auto path = max_min_path(scratch, e.buyer, e.seller)) {
    const Money threshold = path->max_edge_value;
    out.paths.push_back(std::move(*path));
    // Always removes at least the path's own max edge, so the loop terminates.
    scratch.remove_edges_at_least(threshold, &e);
  }
  if (out.paths.empty()) {
    throw Error(Errc::no_cycle_through_edge,
                "no path " + e.buyer.str() + " -> " + e.seller.str() + " closes a cycle");
  }
  return out;
}

CycleCandidate select_min_flow_cycle(const CandidateSet& candidates, const Edge& e) {
  if (candidates.paths.empty()) throw Error(Errc::empty_candidate_set, "no candidate paths");

  std::optional<CycleCandidate> best;
  for (std::size_t i = 0; i < candidates.paths.size(); ++i) {
    const auto& path = candidates.paths[i];
    CycleCandidate c;
    c.edges.reserve(path.edges.size() + 1);
    c.edges.push_back(e);
    c.edges.insert(c.edges.end(), path.edges.begin(), path.edges.end());
    c.critical_value = std::min(path.bottleneck, e.value);
    c.max_value = std::max(path.max_edge_value, e.value);
    c.phi = c.max_value - c.critical_value;
    c.discovery_index = i;
    if (!best || std::tie(c.phi, c.max_value) < std::tie(best->phi, best->max_value)) best = std::move(c);
  }
  return *best;
}

RemovalRecord cancel_cycle(MultiGraph& g, const CycleCandidate& cycle, std::size_t iteration) {
  RemovalRecord rec;
  rec.iteration = iteration;
  rec.subtracted = cycle.critical_value;
  rec.phi = cycle.phi;

  for (const auto& edge : cycle.edges) {
    const auto live = g.find(edge.key());
    if (!live || live->value < cycle.critical_value) {
      throw Error(Errc::inconsistent_state,
                  "cycle edge missing or undervalued: " + edge.seller.str() + "->" + edge.buyer.str() +
                      "@" + edge.time.iso());
    }
    rec.edges.push_back(edge.key());
    rec.before.push_back(live->value);
    rec.after.push_back(live->value - cycle.critical_value);
  }

  for (std::size_t i = 0; i < rec.edges.size(); ++i) {
    if (rec.after[i].is_zero()) {
      g.delete_edge(rec.edges[i]);
    } else {
      g.set_value(rec.edges[i], rec.after[i]);
    }
  }
  return rec;
}

DeleteCycleOutcome delete_cycle(MultiGraph& g, const EdgeKey& e, std::size_t iteration) {
  const auto closing = g.find(e);
  if (!closing) throw Error(Errc::missing_edge, "closing edge absent");
  DeleteCycleOutcome out;
  out.candidates = collect_candidates(g, e);
  out.chosen = select_min_flow_cycle(out.candidates, *closing);
  out.removal = cancel_cycle(g, out.chosen, iteration);
  return out;
}

}  // namespace cycletrace
