#include "cycletrace/widest_path.hpp"

#include <algorithm>
#include <queue>

namespace cycletrace {

BottleneckPath BottleneckPath::from_edges(std::vector<Edge> edges) {
  if (edges.empty()) throw Error(Errc::contract_violation, "empty path");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i - 1].buyer != edges[i].seller) throw Error(Errc::contract_violation, "path does not chain");
  }
  BottleneckPath p;
  p.bottleneck = edges.front().value;
  p.max_edge_value = edges.front().value;
  for (const auto& e : edges) {
    p.bottleneck = std::min(p.bottleneck, e.value);
    p.max_edge_value = std::max(p.max_edge_value, e.value);
  }
  p.edges = std::move(edges);
  return p;
}

SearchState max_min_search(const MultiGraph& g, const DealerId& source) {
  using VertexId = MultiGraph::VertexId;
  const auto src = g.vertex_id(source);
  if (!src) throw Error(Errc::unknown_vertex, "unknown vertex " + source.str());

  SearchState st;
  st.source = *src;
  st.dist.assign(g.vertex_count(), ExtMoney::neg_inf());
  st.parent.assign(g.vertex_count(), std::nullopt);
  st.dist[*src] = ExtMoney::pos_inf();

  struct Entry {
    ExtMoney dist;
    VertexId v;
  };
  // std::priority_queue pops the "largest": higher dist, then smaller name.
  auto lower_priority = [&g](const Entry& a, const Entry& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return g.name(a.v) > g.name(b.v);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> queue(lower_priority);
  std::vector<char> done(g.vertex_count(), 0);
  queue.push({st.dist[*src], *src});

  while (!queue.empty()) {
    const Entry top = queue.top();
    queue.pop();
    if (done[top.v] || top.dist != st.dist[top.v]) continue;  // stale
    done[top.v] = 1;
    st.extraction.emplace_back(top.v, top.dist);

    for (const auto& [n, bundle] : g.out(top.v)) {
      const auto [time, best] = MultiGraph::max_of(bundle);
      const ExtMoney val = std::min(st.dist[top.v], ExtMoney::finite(best.value));
      if (st.dist[n] < val) {
        st.dist[n] = val;
        st.parent[n] = Edge{g.name(top.v), g.name(n), time, best.value, best.serial};
        queue.push({val, n});
      }
    }
  }

  // Never-reached vertices keep -inf; they would be extracted last in the
  // full-queue formulation and relax nothing.
  std::vector<VertexId> rest;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!done[v]) rest.push_back(v);
  }
  std::sort(rest.begin(), rest.end(), [&g](VertexId a, VertexId b) { return g.name(a) < g.name(b); });
  for (VertexId v : rest) st.extraction.emplace_back(v, ExtMoney::neg_inf());
  return st;
}

std::optional<BottleneckPath> max_min_path(const MultiGraph& g, const DealerId& source,
                                           const DealerId& target) {
  const auto dst = g.vertex_id(target);
  if (!dst) throw Error(Errc::unknown_vertex, "unknown vertex " + target.str());
  const SearchState st = max_min_search(g, source);
  if (*dst == st.source || !st.dist[*dst].is_finite()) return std::nullopt;

  std::vector<Edge> reversed;
  for (auto v = *dst; v != st.source;) {
    const auto& edge = st.parent[v];
    if (!edge || reversed.size() > g.vertex_count()) {
      throw Error(Errc::inconsistent_state, "broken parent chain at " + g.name(v).str());
    }
    reversed.push_back(*edge);
    v = *g.vertex_id(edge->seller);
  }
  std::reverse(reversed.begin(), reversed.end());
  return BottleneckPath::from_edges(std::move(reversed));
}

}  // namespace cycletrace
