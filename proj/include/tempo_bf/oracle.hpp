#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "tempo_bf/classify.hpp"
#include "tempo_bf/instance.hpp"
#include "tempo_bf/types.hpp"

// Exhaustive reference over 4-edge subsets. O(|E|^4); meant for graphs of at
// most a few hundred edges. Shares nothing with the engines but the type
// classifier.
namespace tempo_bf::oracle {

/// Accepts four edges iff they form a 2x2 biclique over four distinct vertex
/// pairs. Returns the canonical instance with type set from the timestamps
/// when they are distinct, or nullopt otherwise. `timed` drops the timestamp
/// requirements (static census).
inline std::optional<ButterflyInstance> as_butterfly(const TemporalEdge& a, const TemporalEdge& b,
                                                     const TemporalEdge& c, const TemporalEdge& d,
                                                     bool timed = true) {
  const TemporalEdge* e[4] = {&a, &b, &c, &d};
  VertexId u = a.u, w = a.u, v = a.v, x = a.v;
  for (auto* p : e) {
    u = std::min(u, p->u);
    w = std::max(w, p->u);
    v = std::min(v, p->v);
    x = std::max(x, p->v);
  }
  if (u == w || v == x) return std::nullopt;
  const Timestamp* slot[4] = {nullptr, nullptr, nullptr, nullptr};
  ButterflyInstance bf;
  for (auto* p : e) {
    if (p->u != u && p->u != w) return std::nullopt;
    if (p->v != v && p->v != x) return std::nullopt;
    const int k = (p->u == w ? 1 : 0) + (p->v == x ? 2 : 0);
    if (slot[k]) return std::nullopt;  // same vertex pair twice
    slot[k] = &p->t;
  }
  bf.u = u;
  bf.w = w;
  bf.v = v;
  bf.x = x;
  bf.t_uv = *slot[0];
  bf.t_vw = *slot[1];
  bf.t_ux = *slot[2];
  bf.t_xw = *slot[3];
  if (!timed) return bf;
  const Timestamp t[4] = {bf.t_uv, bf.t_vw, bf.t_ux, bf.t_xw};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (t[i] == t[j]) return std::nullopt;
  bf.type = static_cast<std::uint8_t>(classify_type({bf.t_uv, bf.t_vw}, {bf.t_ux, bf.t_xw}, Layer::upper));
  return bf;
}

/// Calls visit(i, j, k, l, instance) for every accepted subset i<j<k<l.
template <class Visit>
void for_each_butterfly(std::span<const TemporalEdge> edges, Duration delta, Visit&& visit) {
  const std::size_t n = edges.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          auto bf = as_butterfly(edges[i], edges[j], edges[k], edges[l]);
          if (!bf) continue;
          const auto [lo, hi] = std::minmax({bf->t_uv, bf->t_vw, bf->t_ux, bf->t_xw});
          if (time_gap(lo, hi) > delta) continue;
          visit(i, j, k, l, *bf);
        }
}

inline CountVector oracle_count(std::span<const TemporalEdge> edges, Duration delta) {
  CountVector c;
  for_each_butterfly(edges, delta, [&](auto, auto, auto, auto, const ButterflyInstance& b) { c.add(b.type, 1); });
  return c;
}

template <class Sink>
CountVector oracle_enumerate(std::span<const TemporalEdge> edges, Duration delta, Sink&& sink) {
  CountVector c;
  for_each_butterfly(edges, delta, [&](auto, auto, auto, auto, const ButterflyInstance& b) {
    c.add(b.type, 1);
    sink(b);
  });
  return c;
}

/// Butterflies that use the edge at position `edge_index`.
inline CountVector oracle_contains(std::span<const TemporalEdge> edges, Duration delta,
                                   std::size_t edge_index) {
  CountVector c;
  for_each_butterfly(edges, delta, [&](auto i, auto j, auto k, auto l, const ButterflyInstance& b) {
    if (i == edge_index || j == edge_index || k == edge_index || l == edge_index) c.add(b.type, 1);
  });
  return c;
}

/// Number of 4-edge subsets forming a 2x2 biclique, timestamps ignored.
inline std::uint64_t static_census(std::span<const TemporalEdge> edges) {
  std::uint64_t count = 0;
  const std::size_t n = edges.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          if (as_butterfly(edges[i], edges[j], edges[k], edges[l], false)) ++count;
  return count;
}

}  // namespace tempo_bf::oracle
