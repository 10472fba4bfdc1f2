#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "tempo_bf/tempo_bf.hpp"

namespace tempo_bf::support {

// Upper u1, u2 are ids 0, 1; lower v1, v2 are ids 0, 1.
inline std::vector<TemporalEdge> fixture_f1() { return {{0, 0, 1}, {0, 1, 2}, {1, 0, 3}, {1, 1, 4}}; }

inline std::vector<TemporalEdge> fixture_f2() {
  auto e = fixture_f1();
  e.push_back({0, 0, 5});
  return e;
}

inline CountVector counts(std::initializer_list<std::uint64_t> values) {
  CountVector c;
  std::size_t i = 0;
  for (auto v : values) c.add(i++, v);
  return c;
}

/// Small random graph in the oracle's comfort zone.
struct SmallGraph {
  std::size_t upper = 0, lower = 0;
  std::vector<TemporalEdge> edges;
  Duration delta = 0;
};

inline SmallGraph random_small_graph(std::uint64_t seed, std::size_t max_vertices = 8, std::size_t max_edges = 40,
                                     Timestamp max_time = 50, Duration max_delta = 50) {
  std::mt19937_64 rng(seed);
  RandomGraphSpec spec;
  spec.upper_count = 1 + detail::bounded_draw(rng, max_vertices);
  spec.lower_count = 1 + detail::bounded_draw(rng, max_vertices);
  spec.edge_count = detail::bounded_draw(rng, max_edges + 1);
  spec.time_max = max_time;
  spec.seed = rng();
  SmallGraph g;
  g.upper = spec.upper_count;
  g.lower = spec.lower_count;
  g.edges = generate_random_graph(spec).edges;
  g.delta = 1 + detail::bounded_draw(rng, max_delta);
  return g;
}

inline std::vector<ButterflyInstance> sorted(std::vector<ButterflyInstance> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Recounts the window held by a sliding window from scratch.
inline CountVector window_recount(const SlidingWindow& sw, std::size_t upper, std::size_t lower, Duration delta) {
  std::vector<TemporalEdge> edges;
  for (const auto& s : sw.buffer()) edges.push_back(s.edge);
  return count_edges(upper, lower, edges, delta);
}

}  // namespace tempo_bf::support
