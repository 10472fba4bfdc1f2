#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "tempo_bf/classify.hpp"
#include "tempo_bf/combine.hpp"
#include "tempo_bf/count.hpp"
#include "tempo_bf/graph.hpp"
#include "tempo_bf/instance.hpp"
#include "tempo_bf/timestamp_index.hpp"
#include "tempo_bf/types.hpp"
#include "tempo_bf/wedge.hpp"

namespace tempo_bf {

/// Baseline enumeration: the count_baseline traversal, materializing each
/// accepted wedge pair and passing it to `sink`. Returns per-type tallies.
template <class Sink>
CountVector enumerate_baseline(const TemporalBipartiteGraph& g, const VertexPriority& p,
                               Duration delta, Sink&& sink) {
  detail::require_priority_layout(g, p);
  struct RawWedge {
    VertexId mid;
    WedgeTimes times;
  };
  CountVector acc;
  detail::EndBuckets<RawWedge> buckets(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const auto rank = p[u];
    for (const auto& first : detail::lower_priority_suffix(g.adjacency(u), p, rank))
      for (const auto& second : detail::lower_priority_suffix(g.adjacency(first.neighbor), p, rank))
        buckets.push(second.neighbor, {first.neighbor, {first.t, second.t}});

    const Layer layer = g.layer_of(u);
    buckets.drain([&](VertexId end, std::vector<RawWedge>& h) {
      for (std::size_t i = 1; i < h.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (h[i].mid == h[j].mid) continue;
          const Timestamp t[4] = {h[i].times.start, h[i].times.end, h[j].times.start, h[j].times.end};
          if (t[0] == t[1] || t[0] == t[2] || t[0] == t[3] || t[1] == t[2] || t[1] == t[3] ||
              t[2] == t[3])
            continue;
          const auto [lo, hi] = std::minmax({t[0], t[1], t[2], t[3]});
          if (time_gap(lo, hi) > delta) continue;
          const auto type = classify_type(h[i].times, h[j].times, layer);
          acc.add(type, 1);
          sink(make_instance(type, layer, g.local_id(u), g.local_id(end), g.local_id(h[i].mid),
                             h[i].times, g.local_id(h[j].mid), h[j].times));
        }
      }
    });
  }
  return acc;
}

/// Range scans over one arrival-ascending list for a query arrival `ta`:
/// from the front while arrivals stay below ta (covering partners), then
/// from the back while arrivals stay above ta (intersecting partners).
/// Equal arrivals are never reported.
template <class Entry, class OnCovering, class OnIntersecting>
void scan_arrival_list(std::span<const Entry> list, Timestamp ta, OnCovering&& covering,
                       OnIntersecting&& intersecting) {
  for (std::size_t k = 0; k < list.size() && detail::arrival_of(list[k]) < ta; ++k) covering(list[k]);
  for (std::size_t k = list.size(); k > 0 && detail::arrival_of(list[k - 1]) > ta; --k)
    intersecting(list[k - 1]);
}

/// Optimized enumeration: the count_optimized combination with arrival
/// lists holding whole wedges, partners found by range traversal.
template <class Sink>
CountVector enumerate_optimized(const TemporalBipartiteGraph& g, const VertexPriority& p,
                                Duration delta, Sink&& sink) {
  CountVector acc;
  std::array<TimestampIndex<Wedge>, 4> index;
  std::vector<Wedge> scratch;
  std::vector<WedgeBlock> blocks;
  detail::for_each_wedge_bucket(g, p, delta, [&](Layer layer, VertexId start, VertexId end,
                                                 std::vector<Wedge>& bucket) {
    if (detail::build_blocks(bucket, blocks) < 2) return;
    const VertexId s = g.local_id(start), e = g.local_id(end);
    auto emit = [&](const Wedge& w, const Wedge& partner, Coverage c, bool same_dir) {
      const auto type = butterfly_type(c, same_dir, layer);
      acc.add(type, 1);
      sink(make_instance(type, layer, s, e, g.local_id(w.mid), w.raw(), g.local_id(partner.mid),
                         partner.raw()));
    };
    auto visit = [&](const Wedge& w, const TimestampIndex<Wedge>& ix, bool same_dir) {
      for (const auto& [t, list] : ix) {
        if (t > w.ta) {
          for (const auto& partner : list) emit(w, partner, Coverage::non_overlap, same_dir);
        } else if (t < w.ta) {
          scan_arrival_list(
              std::span<const Wedge>(list), w.ta,
              [&](const Wedge& partner) { emit(w, partner, Coverage::covering, same_dir); },
              [&](const Wedge& partner) { emit(w, partner, Coverage::intersecting, same_dir); });
        }
      }
    };
    combine(std::span<Wedge>(bucket), std::span<WedgeBlock>(blocks), delta, index, scratch,
            [&](const Wedge& w, const auto& same, const auto& diff) {
              visit(w, same, true);
              visit(w, diff, false);
            });
  });
  return acc;
}

}  // namespace tempo_bf
