#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tempo_bf/types.hpp"

namespace tempo_bf {

/// Entry of an incident edge list E(x). `neighbor` is a global vertex id.
struct Adjacent {
  VertexId neighbor = 0;
  Timestamp t = 0;
  EdgeId id = 0;
};

enum class AdjacencyOrder : std::uint8_t { insertion, priority, time };

/// Total order over all vertices: higher temporal degree wins, equal degrees
/// are broken by the global id (higher id wins). rank[x] lies in [1, |V|].
struct VertexPriority {
  std::vector<std::uint32_t> rank;

  std::uint32_t operator[](VertexId global) const { return rank[global]; }
  bool higher(VertexId a, VertexId b) const { return rank[a] > rank[b]; }
  std::size_t size() const noexcept { return rank.size(); }
  bool empty() const noexcept { return rank.empty(); }
};

/// Temporal bipartite multigraph over an upper layer U and a lower layer L.
///
/// Vertices carry global ids: upper vertices occupy [0, |U|), lower vertices
/// [|U|, |U|+|L|). Every edge is stored once in each endpoint's list and keeps
/// a unique EdgeId assigned at insertion. Parallel edges, including exact
/// (u, v, t) duplicates, are kept.
class TemporalBipartiteGraph {
 public:
  TemporalBipartiteGraph() = default;
  TemporalBipartiteGraph(std::size_t upper_count, std::size_t lower_count)
      : upper_count_(upper_count), lower_count_(lower_count), adj_(upper_count + lower_count) {}

  static TemporalBipartiteGraph from_edges(std::size_t upper_count, std::size_t lower_count,
                                           std::span<const TemporalEdge> edges) {
    TemporalBipartiteGraph g(upper_count, lower_count);
    for (const auto& e : edges) g.add_edge(e);
    return g;
  }

  std::size_t upper_count() const noexcept { return upper_count_; }
  std::size_t lower_count() const noexcept { return lower_count_; }
  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  AdjacencyOrder order() const noexcept { return order_; }

  VertexId upper_vertex(VertexId u) const noexcept { return u; }
  VertexId lower_vertex(VertexId v) const noexcept {
    return static_cast<VertexId>(upper_count_ + v);
  }
  Layer layer_of(VertexId global) const noexcept {
    return global < upper_count_ ? Layer::upper : Layer::lower;
  }
  VertexId local_id(VertexId global) const noexcept {
    return global < upper_count_ ? global : static_cast<VertexId>(global - upper_count_);
  }

  std::span<const Adjacent> adjacency(VertexId global) const { return adj_[global]; }
  std::size_t degree(VertexId global) const { return adj_[global].size(); }

  /// Appends an edge to both endpoint lists; the adjacency order becomes
  /// unspecified until the next sort.
  EdgeId add_edge(const TemporalEdge& e) {
    check_endpoints(e);
    const EdgeId id = next_id_++;
    adj_[upper_vertex(e.u)].push_back({lower_vertex(e.v), e.t, id});
    adj_[lower_vertex(e.v)].push_back({upper_vertex(e.u), e.t, id});
    ++edge_count_;
    ++times_[e.t];
    if (edge_count_ > 1) order_ = AdjacencyOrder::insertion;
    return id;
  }

  /// Inserts an edge at its chronological position (streaming layout).
  EdgeId insert_edge(const TemporalEdge& e) {
    require_time_order("insert_edge");
    check_endpoints(e);
    const EdgeId id = next_id_++;
    insert_sorted(adj_[upper_vertex(e.u)], {lower_vertex(e.v), e.t, id});
    insert_sorted(adj_[lower_vertex(e.v)], {upper_vertex(e.u), e.t, id});
    ++edge_count_;
    ++times_[e.t];
    return id;
  }

  /// Removes the edge with the given identity. Returns false when absent.
  bool remove_edge(const TemporalEdge& e, EdgeId id) {
    if (e.u >= upper_count_ || e.v >= lower_count_) return false;
    auto& up = adj_[upper_vertex(e.u)];
    auto& low = adj_[lower_vertex(e.v)];
    const auto a = locate(up, e.t, id);
    const auto b = locate(low, e.t, id);
    if (a == up.end() || b == low.end()) return false;
    up.erase(a);
    low.erase(b);
    --edge_count_;
    if (auto it = times_.find(e.t); --it->second == 0) times_.erase(it);
    return true;
  }

  /// True when the edge identity is present in the graph.
  bool contains(const TemporalEdge& e, EdgeId id) const {
    if (e.u >= upper_count_ || e.v >= lower_count_) return false;
    const auto& up = adj_[upper_vertex(e.u)];
    auto it = locate(up, e.t, id);
    return it != up.end() && it->neighbor == lower_vertex(e.v);
  }

  /// Earliest and latest timestamp present. Requires a non-empty graph.
  Timestamp min_time() const { return times_.begin()->first; }
  Timestamp max_time() const { return times_.rbegin()->first; }

  /// Number of edges with timestamp strictly below t, or `cap + 1` as soon
  /// as that many have been seen.
  std::size_t count_before(Timestamp t, std::size_t cap) const {
    std::size_t n = 0;
    for (auto it = times_.begin(); it != times_.end() && it->first < t; ++it) {
      n += it->second;
      if (n > cap) return cap + 1;
    }
    return n;
  }

  /// All edges with their ids, ordered by id.
  std::vector<std::pair<EdgeId, TemporalEdge>> edges_with_ids() const {
    std::vector<std::pair<EdgeId, TemporalEdge>> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < upper_count_; ++u) {
      for (const auto& a : adj_[u]) out.push_back({a.id, {u, local_id(a.neighbor), a.t}});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

  std::vector<TemporalEdge> edges() const {
    std::vector<TemporalEdge> out;
    out.reserve(edge_count_);
    for (const auto& [id, e] : edges_with_ids()) out.push_back(e);
    return out;
  }

  /// Orders each E(x) by neighbor priority descending; parallel edges to one
  /// neighbor stay adjacent, by timestamp then insertion id.
  void sort_by_priority(const VertexPriority& p) {
    if (p.size() != vertex_count())
      throw std::invalid_argument("vertex priority does not match the graph");
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end(), [&](const Adjacent& a, const Adjacent& b) {
        if (a.neighbor != b.neighbor) return p[a.neighbor] > p[b.neighbor];
        if (a.t != b.t) return a.t < b.t;
        return a.id < b.id;
      });
    }
    order_ = AdjacencyOrder::priority;
  }

  /// Orders each E(x) chronologically, ties by insertion id.
  void sort_by_time() {
    for (auto& list : adj_) std::sort(list.begin(), list.end(), time_less);
    order_ = AdjacencyOrder::time;
  }

  /// Index range of E(x) whose timestamps lie in [lo, hi]. Requires time order.
  std::span<const Adjacent> time_range(VertexId global, Timestamp lo, Timestamp hi) const {
    const auto& list = adj_[global];
    auto first = std::partition_point(list.begin(), list.end(),
                                      [lo](const Adjacent& a) { return a.t < lo; });
    auto last = std::partition_point(first, list.end(),
                                     [hi](const Adjacent& a) { return a.t <= hi; });
    return {first, last};
  }

 private:
  static bool time_less(const Adjacent& a, const Adjacent& b) {
    return a.t != b.t ? a.t < b.t : a.id < b.id;
  }

  void check_endpoints(const TemporalEdge& e) const {
    if (e.u >= upper_count_ || e.v >= lower_count_)
      throw std::out_of_range("edge endpoint outside the vertex layers");
  }

  void require_time_order(const char* what) {
    if (edge_count_ == 0) order_ = AdjacencyOrder::time;
    if (order_ != AdjacencyOrder::time)
      throw std::logic_error(std::string(what) + " requires chronological adjacency");
  }

  static void insert_sorted(std::vector<Adjacent>& list, const Adjacent& a) {
    list.insert(std::upper_bound(list.begin(), list.end(), a, time_less), a);
  }

  template <class List>
  auto locate(List& list, Timestamp t, EdgeId id) const -> decltype(list.begin()) {
    if (order_ == AdjacencyOrder::time) {
      auto it = std::lower_bound(list.begin(), list.end(), Adjacent{0, t, id}, time_less);
      return it != list.end() && it->id == id ? it : list.end();
    }
    return std::find_if(list.begin(), list.end(), [id](const Adjacent& a) { return a.id == id; });
  }

  std::size_t upper_count_ = 0;
  std::size_t lower_count_ = 0;
  std::size_t edge_count_ = 0;
  EdgeId next_id_ = 0;
  AdjacencyOrder order_ = AdjacencyOrder::time;
  std::vector<std::vector<Adjacent>> adj_;
  std::map<Timestamp, std::size_t> times_;
};

/// Ranks vertices by (|E(x)|, global id) ascending into 1..|V|.
inline VertexPriority compute_vertex_priority(const TemporalBipartiteGraph& g) {
  std::vector<VertexId> order(g.vertex_count());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da != db ? da < db : a < b;
  });
  VertexPriority p;
  p.rank.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) p.rank[order[i]] = static_cast<std::uint32_t>(i + 1);
  return p;
}

inline void sort_adjacency_by_priority(TemporalBipartiteGraph& g, const VertexPriority& p) {
  g.sort_by_priority(p);
}

inline void sort_adjacency_by_time(TemporalBipartiteGraph& g) { g.sort_by_time(); }

/// Computes the priority and applies the counting layout in one step.
inline VertexPriority prepare_for_counting(TemporalBipartiteGraph& g) {
  auto p = compute_vertex_priority(g);
  g.sort_by_priority(p);
  return p;
}

}  // namespace tempo_bf
