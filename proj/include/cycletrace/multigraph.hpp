#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "cycletrace/model.hpp"

namespace cycletrace {

/// Identity of one parallel edge. Value is deliberately not part of it since
/// cancellation mutates values in place.
struct EdgeKey {
  DealerId seller;
  DealerId buyer;
  Timestamp time;

  auto operator<=>(const EdgeKey&) const = default;
};

/// A directed edge seller -> buyer carrying its (value, time) weight.
struct Edge {
  DealerId seller;
  DealerId buyer;
  Timestamp time;
  Money value;
  std::uint64_t serial = 0;  // originating ledger row, kept for residual export

  EdgeKey key() const { return {seller, buyer, time}; }
  bool operator==(const Edge&) const = default;
};

/// Weighted directed multigraph with no self-loops. Parallel edges between an
/// ordered pair are keyed by timestamp. Vertices are interned to dense ids in
/// insertion order; they stay after their edges are deleted.
///
/// Value type: copying yields a fully independent graph.
class MultiGraph {
 public:
  using VertexId = std::uint32_t;

  struct Parallel {
    Money value;
    std::uint64_t serial = 0;
  };
  /// Parallel edges of one ordered pair, ordered by time.
  using Bundle = std::map<Timestamp, Parallel>;

  VertexId add_vertex(const DealerId& id);

  /// Throws Error{self_loop}, Error{duplicate_edge_key}, Error{contract_violation} on zero value.
  EdgeKey add_edge(const Transaction& t);
  EdgeKey add_edge(const Edge& e);

  /// Throws Error{missing_edge}.
  void delete_edge(const EdgeKey& key);

  /// Overwrites the value of a present edge; a zero value is rejected.
  void set_value(const EdgeKey& key, Money value);

  /// Deletes every edge whose value is >= threshold except `keep` (if given).
  /// Returns the number of edges removed.
  std::size_t remove_edges_at_least(Money threshold, const EdgeKey* keep = nullptr);

  bool contains(const EdgeKey& key) const;
  std::optional<Edge> find(const EdgeKey& key) const;

  /// Among edges x -> y the one with the largest value; ties go to the
  /// earliest timestamp.
  std::optional<Edge> max_parallel_edge(const DealerId& x, const DealerId& y) const;

  /// Full DFS back-edge check over the collapsed digraph.
  bool has_cycle() const;
  /// True when `to` is reachable from `from` by a non-empty directed walk.
  bool reaches(const DealerId& from, const DealerId& to) const;

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return edge_count_ == 0; }
  bool has_vertex(const DealerId& id) const { return ids_.contains(id); }

  /// Sorted by DealerId.
  std::vector<DealerId> vertices() const;
  /// Sorted by EdgeKey.
  std::vector<Edge> edges() const;

  // Index-level access for the search engines.
  std::optional<VertexId> vertex_id(const DealerId& id) const;
  const DealerId& name(VertexId v) const { return names_[v]; }
  const std::map<VertexId, Bundle>& out(VertexId v) const { return out_[v]; }
  const std::set<VertexId>& in(VertexId v) const { return in_[v]; }
  static std::pair<Timestamp, Parallel> max_of(const Bundle& bundle);

  /// Verifies the forward (pair -> time) and reverse adjacency indexes agree
  /// and that the stored edge count matches.
  bool check_consistency() const;

  /// Structural equality: same vertex names and same edge set with values.
  friend bool operator==(const MultiGraph& a, const MultiGraph& b);

 private:
  Bundle* bundle(const EdgeKey& key);
  const Bundle* bundle(const EdgeKey& key) const;
  void erase_from_bundle(VertexId from, VertexId to, Bundle::iterator it);

  std::vector<DealerId> names_;
  std::unordered_map<DealerId, VertexId> ids_;
  std::vector<std::map<VertexId, Bundle>> out_;
  std::vector<std::set<VertexId>> in_;
  std::size_t edge_count_ = 0;
};

}  // namespace cycletrace
