#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "cycletrace/multigraph.hpp"

namespace cycletrace {

/// Money extended with -inf (unreached) and +inf (the search source). The
/// sentinels order strictly below/above every finite amount.
class ExtMoney {
 public:
  static constexpr ExtMoney neg_inf() { return ExtMoney(Kind::neg_inf, {}); }
  static constexpr ExtMoney pos_inf() { return ExtMoney(Kind::pos_inf, {}); }
  static constexpr ExtMoney finite(Money m) { return ExtMoney(Kind::finite, m); }

  constexpr bool is_finite() const noexcept { return kind_ == Kind::finite; }
  constexpr bool is_neg_inf() const noexcept { return kind_ == Kind::neg_inf; }
  constexpr bool is_pos_inf() const noexcept { return kind_ == Kind::pos_inf; }
  /// Only meaningful when finite.
  constexpr Money value() const noexcept { return value_; }

  constexpr std::strong_ordering operator<=>(const ExtMoney& o) const noexcept {
    if (kind_ != o.kind_) return kind_ <=> o.kind_;
    if (kind_ != Kind::finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const ExtMoney& o) const noexcept { return (*this <=> o) == 0; }

 private:
  enum class Kind : unsigned char { neg_inf = 0, finite = 1, pos_inf = 2 };
  constexpr ExtMoney(Kind k, Money m) : kind_(k), value_(m) {}

  Kind kind_ = Kind::neg_inf;
  Money value_;
};

/// Bottleneck-search result over one graph, indexed by MultiGraph::VertexId.
struct SearchState {
  MultiGraph::VertexId source = 0;
  std::vector<ExtMoney> dist;
  /// Chosen incoming edge (the max parallel edge of its pair); set iff dist is finite.
  std::vector<std::optional<Edge>> parent;
  /// Vertices in extraction order with their dist at extraction time.
  std::vector<std::pair<MultiGraph::VertexId, ExtMoney>> extraction;
};

/// A simple path and its derived critical (min) and max edge values.
struct BottleneckPath {
  std::vector<Edge> edges;
  Money bottleneck;
  Money max_edge_value;

  /// Builds from a non-empty chained edge sequence, deriving both values.
  static BottleneckPath from_edges(std::vector<Edge> edges);
  bool operator==(const BottleneckPath&) const = default;
};

/// Best-first search from `source` with a max-priority queue keyed on dist.
///
/// Relaxation: dist[n] = max(dist[n], min(dist[ver], value(max parallel ver->n))),
/// applied only on strict improvement. Ties in the queue pop the
/// lexicographically smallest DealerId first. Re-insertion with lazy
/// invalidation replaces decrease-key; extraction order is that of a true
/// max-heap with key updates. O((m + n) log n).
///
/// Throws Error{unknown_vertex}.
SearchState max_min_search(const MultiGraph& g, const DealerId& source);

/// Widest (maximum-bottleneck) path from `source` to `target`, recovered by
/// walking parent edges back from the target. std::nullopt when unreachable
/// or source == target. Throws Error{unknown_vertex}.
std::optional<BottleneckPath> max_min_path(const MultiGraph& g, const DealerId& source,
                                           const DealerId& target);

}  // namespace cycletrace
