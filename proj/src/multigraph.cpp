#include "cycletrace/multigraph.hpp"

#include <algorithm>

namespace cycletrace {

MultiGraph::VertexId MultiGraph::add_vertex(const DealerId& id) {
  if (auto it = ids_.find(id); it != ids_.end()) return it->second;
  const auto v = static_cast<VertexId>(names_.size());
  names_.push_back(id);
  ids_.emplace(id, v);
  out_.emplace_back();
  in_.emplace_back();
  return v;
}

EdgeKey MultiGraph::add_edge(const Transaction& t) {
  return add_edge(Edge{t.seller, t.buyer, t.time, t.value, t.serial});
}

EdgeKey MultiGraph::add_edge(const Edge& e) {
  if (e.seller == e.buyer) throw Error(Errc::self_loop, "self-loop on " + e.seller.str());
  if (e.value.is_zero()) throw Error(Errc::contract_violation, "edge value must be positive");
  if (contains(e.key())) {
    throw Error(Errc::duplicate_edge_key,
                "edge already present: " + e.seller.str() + "->" + e.buyer.str() + "@" + e.time.iso());
  }
  const VertexId from = add_vertex(e.seller);
  const VertexId to = add_vertex(e.buyer);
  out_[from][to].emplace(e.time, Parallel{e.value, e.serial});
  in_[to].insert(from);
  ++edge_count_;
  return e.key();
}

MultiGraph::Bundle* MultiGraph::bundle(const EdgeKey& key) {
  return const_cast<Bundle*>(std::as_const(*this).bundle(key));
}

const MultiGraph::Bundle* MultiGraph::bundle(const EdgeKey& key) const {
  const auto from = vertex_id(key.seller);
  const auto to = vertex_id(key.buyer);
  if (!from || !to) return nullptr;
  const auto it = out_[*from].find(*to);
  return it == out_[*from].end() ? nullptr : &it->second;
}

void MultiGraph::erase_from_bundle(VertexId from, VertexId to, Bundle::iterator it) {
  auto& pair = out_[from];
  auto bundle_it = pair.find(to);
  bundle_it->second.erase(it);
  if (bundle_it->second.empty()) {
    pair.erase(bundle_it);
    in_[to].erase(from);
  }
  --edge_count_;
}

void MultiGraph::delete_edge(const EdgeKey& key) {
  Bundle* b = bundle(key);
  const auto it = b ? b->find(key.time) : Bundle::iterator{};
  if (!b || it == b->end()) {
    throw Error(Errc::missing_edge,
                "no edge " + key.seller.str() + "->" + key.buyer.str() + "@" + key.time.iso());
  }
  erase_from_bundle(*vertex_id(key.seller), *vertex_id(key.buyer), it);
}

void MultiGraph::set_value(const EdgeKey& key, Money value) {
  if (value.is_zero()) throw Error(Errc::contract_violation, "edge value must be positive");
  Bundle* b = bundle(key);
  const auto it = b ? b->find(key.time) : Bundle::iterator{};
  if (!b || it == b->end()) {
    throw Error(Errc::missing_edge,
                "no edge " + key.seller.str() + "->" + key.buyer.str() + "@" + key.time.iso());
  }
  it->second.value = value;
}

std::size_t MultiGraph::remove_edges_at_least(Money threshold, const EdgeKey* keep) {
  std::optional<std::pair<VertexId, VertexId>> keep_pair;
  if (keep) {
    const auto from = vertex_id(keep->seller);
    const auto to = vertex_id(keep->buyer);
    if (from && to) keep_pair.emplace(*from, *to);
  }

  std::size_t removed = 0;
  for (VertexId from = 0; from < out_.size(); ++from) {
    auto& pairs = out_[from];
    for (auto pit = pairs.begin(); pit != pairs.end();) {
      auto& b = pit->second;
      const bool guarded = keep_pair && keep_pair->first == from && keep_pair->second == pit->first;
      for (auto it = b.begin(); it != b.end();) {
        if (it->second.value >= threshold && !(guarded && it->first == keep->time)) {
          it = b.erase(it);
          ++removed;
        } else {
          ++it;
        }
      }
      if (b.empty()) {
        in_[pit->first].erase(from);
        pit = pairs.erase(pit);
      } else {
        ++pit;
      }
    }
  }
  edge_count_ -= removed;
  return removed;
}

bool MultiGraph::contains(const EdgeKey& key) const {
  const Bundle* b = bundle(key);
  return b && b->contains(key.time);
}

std::optional<Edge> MultiGraph::find(const EdgeKey& key) const {
  const Bundle* b = bundle(key);
  if (!b) return std::nullopt;
  const auto it = b->find(key.time);
  if (it == b->end()) return std::nullopt;
  return Edge{key.seller, key.buyer, key.time, it->second.value, it->second.serial};
}

std::pair<Timestamp, MultiGraph::Parallel> MultiGraph::max_of(const Bundle& bundle) {
  // Bundle iterates in time order; strict > keeps the earliest among equals.
  auto best = bundle.begin();
  for (auto it = std::next(best); it != bundle.end(); ++it) {
    if (it->second.value > best->second.value) best = it;
  }
  return *best;
}

std::optional<Edge> MultiGraph::max_parallel_edge(const DealerId& x, const DealerId& y) const {
  const Bundle* b = bundle(EdgeKey{x, y, {}});
  if (!b || b->empty()) return std::nullopt;
  const auto [time, p] = max_of(*b);
  return Edge{x, y, time, p.value, p.serial};
}

bool MultiGraph::has_cycle() const {
  enum : char { white, grey, black };
  std::vector<char> colour(names_.size(), white);
  // Iterative DFS: (vertex, next-neighbour iterator).
  std::vector<std::pair<VertexId, std::map<VertexId, Bundle>::const_iterator>> stack;
  for (VertexId root = 0; root < names_.size(); ++root) {
    if (colour[root] != white) continue;
    colour[root] = grey;
    stack.emplace_back(root, out_[root].begin());
    while (!stack.empty()) {
      auto& [v, it] = stack.back();
      if (it == out_[v].end()) {
        colour[v] = black;
        stack.pop_back();
        continue;
      }
      const VertexId n = it->first;
      ++it;
      if (colour[n] == grey) return true;  // back edge
      if (colour[n] == white) {
        colour[n] = grey;
        stack.emplace_back(n, out_[n].begin());
      }
    }
  }
  return false;
}

bool MultiGraph::reaches(const DealerId& from, const DealerId& to) const {
  const auto s = vertex_id(from);
  const auto t = vertex_id(to);
  if (!s || !t) return false;
  std::vector<char> seen(names_.size(), 0);
  std::vector<VertexId> stack{*s};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const auto& [n, b] : out_[v]) {
      if (n == *t) return true;
      if (!seen[n]) {
        seen[n] = 1;
        stack.push_back(n);
      }
    }
  }
  return false;
}

std::vector<DealerId> MultiGraph::vertices() const {
  std::vector<DealerId> out = names_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> MultiGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexId from = 0; from < out_.size(); ++from) {
    for (const auto& [to, b] : out_[from]) {
      for (const auto& [time, p] : b) out.push_back({names_[from], names_[to], time, p.value, p.serial});
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.key() < b.key(); });
  return out;
}

std::optional<MultiGraph::VertexId> MultiGraph::vertex_id(const DealerId& id) const {
  const auto it = ids_.find(id);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool MultiGraph::check_consistency() const {
  std::size_t counted = 0;
  for (VertexId from = 0; from < out_.size(); ++from) {
    for (const auto& [to, b] : out_[from]) {
      if (b.empty() || to == from || !in_[to].contains(from)) return false;
      for (const auto& [time, p] : b) {
        if (p.value.is_zero()) return false;
      }
      counted += b.size();
    }
  }
  for (VertexId to = 0; to < in_.size(); ++to) {
    for (VertexId from : in_[to]) {
      if (!out_[from].contains(to)) return false;
    }
  }
  for (VertexId v = 0; v < names_.size(); ++v) {
    const auto it = ids_.find(names_[v]);
    if (it == ids_.end() || it->second != v) return false;
  }
  return counted == edge_count_ && ids_.size() == names_.size();
}

bool operator==(const MultiGraph& a, const MultiGraph& b) {
  return a.edge_count() == b.edge_count() && a.vertices() == b.vertices() && a.edges() == b.edges();
}

}  // namespace cycletrace
