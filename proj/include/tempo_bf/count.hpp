#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "tempo_bf/classify.hpp"
#include "tempo_bf/combine.hpp"
#include "tempo_bf/graph.hpp"
#include "tempo_bf/timestamp_index.hpp"
#include "tempo_bf/twin_index.hpp"
#include "tempo_bf/types.hpp"
#include "tempo_bf/wedge.hpp"

namespace tempo_bf {

namespace detail {

inline void require_priority_layout(const TemporalBipartiteGraph& g, const VertexPriority& p) {
  if (p.size() != g.vertex_count())
    throw std::invalid_argument("vertex priority does not match the graph");
  if (g.edge_count() > 1 && g.order() != AdjacencyOrder::priority)
    throw std::logic_error("counting engines require priority-sorted adjacency");
}

/// First entry of a priority-descending list whose neighbor ranks below `rank`.
inline std::span<const Adjacent> lower_priority_suffix(std::span<const Adjacent> list,
                                                       const VertexPriority& p, std::uint32_t rank) {
  auto it = std::partition_point(list.begin(), list.end(),
                                 [&](const Adjacent& a) { return p[a.neighbor] >= rank; });
  return {it, list.end()};
}

/// Vertex-indexed wedge buckets reused across start vertices.
template <class W>
class EndBuckets {
 public:
  explicit EndBuckets(std::size_t vertices) : bucket_(vertices) {}

  void push(VertexId end, const W& w) {
    auto& b = bucket_[end];
    if (b.empty()) touched_.push_back(end);
    b.push_back(w);
  }

  template <class F>
  void drain(F&& f) {
    for (VertexId end : touched_) {
      f(end, bucket_[end]);
      bucket_[end].clear();
    }
    touched_.clear();
  }

 private:
  std::vector<std::vector<W>> bucket_;
  std::vector<VertexId> touched_;
};

/// Enumerates, for every start vertex u, the wedges u-v-w with v and w of
/// lower priority than u that pass the pairwise timestamp filter, grouped by
/// end vertex w. Calls f(layer of u, u, w, bucket).
template <class F>
void for_each_wedge_bucket(const TemporalBipartiteGraph& g, const VertexPriority& p, Duration delta,
                           F&& f) {
  require_priority_layout(g, p);
  EndBuckets<Wedge> buckets(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const auto rank = p[u];
    for (const auto& first : lower_priority_suffix(g.adjacency(u), p, rank)) {
      for (const auto& second : lower_priority_suffix(g.adjacency(first.neighbor), p, rank)) {
        if (auto w = make_wedge(first.neighbor, first.t, second.t, delta))
          buckets.push(second.neighbor, *w);
      }
    }
    const Layer layer = g.layer_of(u);
    buckets.drain([&](VertexId end, std::vector<Wedge>& bucket) { f(layer, u, end, bucket); });
  }
}

/// Sorts a bucket into per-middle blocks (forward half, then backward half,
/// each by wedge priority). Returns the number of blocks.
inline std::size_t build_blocks(std::vector<Wedge>& bucket, std::vector<WedgeBlock>& blocks) {
  std::sort(bucket.begin(), bucket.end(), [](const Wedge& a, const Wedge& b) {
    if (a.mid != b.mid) return a.mid < b.mid;
    if (a.forward != b.forward) return a.forward;
    return WedgePriorityLess{}(a, b);
  });
  blocks.clear();
  for (std::size_t i = 0; i < bucket.size();) {
    WedgeBlock blk{i, 0, 0};
    const VertexId mid = bucket[i].mid;
    for (; i < bucket.size() && bucket[i].mid == mid; ++i) (bucket[i].forward ? blk.forward : blk.backward)++;
    blocks.push_back(blk);
  }
  return blocks.size();
}

}  // namespace detail

struct BaselineOptions {
  /// Drop wedges with equal or over-delta timestamps before pairing. The
  /// plain baseline leaves every wedge in and checks pairs in full.
  bool prefilter_wedges = false;
};

struct BaselineStats {
  /// Wedge pairs with distinct middle vertices that reached the full check.
  std::uint64_t pairs_examined = 0;
};

/// Baseline counter: all wedges from each start vertex to lower-priority
/// middle and end vertices, every same-end pair checked and classified.
inline CountVector count_baseline(const TemporalBipartiteGraph& g, const VertexPriority& p,
                                  Duration delta, BaselineOptions options = {},
                                  BaselineStats* stats = nullptr) {
  detail::require_priority_layout(g, p);
  struct RawWedge {
    VertexId mid;
    WedgeTimes times;
  };
  CountVector acc;
  detail::EndBuckets<RawWedge> buckets(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const auto rank = p[u];
    for (const auto& first : detail::lower_priority_suffix(g.adjacency(u), p, rank)) {
      for (const auto& second : detail::lower_priority_suffix(g.adjacency(first.neighbor), p, rank)) {
        if (options.prefilter_wedges && !make_wedge(first.neighbor, first.t, second.t, delta)) continue;
        buckets.push(second.neighbor, {first.neighbor, {first.t, second.t}});
      }
    }
    const Layer layer = g.layer_of(u);
    buckets.drain([&](VertexId, std::vector<RawWedge>& h) {
      for (std::size_t i = 1; i < h.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (h[i].mid == h[j].mid) continue;
          if (stats) ++stats->pairs_examined;
          const Timestamp t[4] = {h[i].times.start, h[i].times.end, h[j].times.start, h[j].times.end};
          if (t[0] == t[1] || t[0] == t[2] || t[0] == t[3] || t[1] == t[2] || t[1] == t[3] ||
              t[2] == t[3])
            continue;
          const auto [lo, hi] = std::minmax({t[0], t[1], t[2], t[3]});
          if (time_gap(lo, hi) > delta) continue;
          acc.add(classify_type(h[i].times, h[j].times, layer), 1);
        }
      }
    });
  }
  return acc;
}

/// Optimized counter: filtered wedges grouped into per-middle sets, combined
/// bottom-up with t_s-keyed arrival lists and binary-search tallies.
inline CountVector count_optimized(const TemporalBipartiteGraph& g, const VertexPriority& p,
                                   Duration delta) {
  CountVector acc;
  std::array<TimestampIndex<Timestamp>, 4> index;
  std::vector<Wedge> scratch;
  std::vector<WedgeBlock> blocks;
  detail::for_each_wedge_bucket(g, p, delta, [&](Layer layer, VertexId, VertexId, std::vector<Wedge>& bucket) {
    if (detail::build_blocks(bucket, blocks) < 2) return;
    combine(std::span<Wedge>(bucket), std::span<WedgeBlock>(blocks), delta, index, scratch,
            [&](const Wedge& w, const auto& same, const auto& diff) { tally_lists(w, same, diff, layer, acc); });
  });
  return acc;
}

/// Twin-tree counter: as count_optimized, with every query answered by rank
/// arithmetic on synchronized t_a / t_s order-statistics trees.
inline CountVector count_extreme(const TemporalBipartiteGraph& g, const VertexPriority& p,
                                 Duration delta) {
  CountVector acc;
  std::array<TwinOrderedIndex, 4> index;
  std::vector<Wedge> scratch;
  std::vector<WedgeBlock> blocks;
  detail::for_each_wedge_bucket(g, p, delta, [&](Layer layer, VertexId, VertexId, std::vector<Wedge>& bucket) {
    if (detail::build_blocks(bucket, blocks) < 2) return;
    combine(std::span<Wedge>(bucket), std::span<WedgeBlock>(blocks), delta, index, scratch,
            [&](const Wedge& w, const auto& same, const auto& diff) { tally_twin(w, same, diff, layer, acc); });
  });
  return acc;
}

/// Convenience: exact count of an unprepared graph with the twin-tree engine.
inline CountVector count_edges(std::size_t upper_count, std::size_t lower_count,
                               std::span<const TemporalEdge> edges, Duration delta) {
  auto g = TemporalBipartiteGraph::from_edges(upper_count, lower_count, edges);
  const auto p = prepare_for_counting(g);
  return count_extreme(g, p, delta);
}

using EstimateVector = std::array<double, kButterflyTypes>;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Keeps each edge independently with probability `sample_p`, counts the
/// kept subgraph exactly and scales every type by sample_p^-4.
inline EstimateVector count_sampled(const TemporalBipartiteGraph& g, Duration delta, double sample_p,
                                    std::uint64_t seed) {
  if (!(sample_p > 0.0 && sample_p <= 1.0))
    throw std::invalid_argument("sampling probability must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<TemporalEdge> kept;
  for (const auto& e : g.edges())
    if (sample_p >= 1.0 || unit_draw(rng) < sample_p) kept.push_back(e);
  const auto exact = count_edges(g.upper_count(), g.lower_count(), kept, delta);
  const double scale = 1.0 / std::pow(sample_p, 4);
  EstimateVector out{};
  for (std::size_t i = 0; i < kButterflyTypes; ++i) out[i] = static_cast<double>(exact[i]) * scale;
  return out;
}

}  // namespace tempo_bf
