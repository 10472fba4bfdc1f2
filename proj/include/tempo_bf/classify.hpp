#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "tempo_bf/types.hpp"

namespace tempo_bf {

/// Raw timestamps of one wedge: `start` on the edge touching the start
/// vertex, `end` on the edge touching the end vertex.
struct WedgeTimes {
  Timestamp start = 0;
  Timestamp end = 0;
};

enum class Coverage : std::uint8_t { non_overlap = 0, intersecting = 1, covering = 2 };

/// Relation of the closed time intervals spanned by two wedges.
constexpr Coverage coverage_of(WedgeTimes a, WedgeTimes b) noexcept {
  const Timestamp a_lo = std::min(a.start, a.end), a_hi = std::max(a.start, a.end);
  const Timestamp b_lo = std::min(b.start, b.end), b_hi = std::max(b.start, b.end);
  if (a_hi < b_lo || b_hi < a_lo) return Coverage::non_overlap;
  if ((a_lo < b_lo && b_hi < a_hi) || (b_lo < a_lo && a_hi < b_hi)) return Coverage::covering;
  return Coverage::intersecting;
}

/// Type index for a wedge pair with known coverage and direction relation,
/// as seen from a start vertex on `layer`.
constexpr std::size_t butterfly_type(Coverage c, bool same_direction, Layer layer) noexcept {
  return (static_cast<std::size_t>(c) + (same_direction ? 0U : 3U)) ^ layer_bit(layer);
}

/// Canonical butterfly type of two wedges sharing start and end vertex.
///
/// From an upper start vertex: same direction gives 0/1/2 and opposite
/// directions 3/4/5 for non-overlap/intersecting/covering. A lower start
/// vertex flips the lowest bit. Throws std::invalid_argument unless the four
/// timestamps are pairwise distinct.
inline std::size_t classify_type(WedgeTimes a, WedgeTimes b, Layer start_layer) {
  const Timestamp t[4] = {a.start, a.end, b.start, b.end};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (t[i] == t[j]) throw std::invalid_argument("classify_type: timestamps must be distinct");
  const bool same = (a.start < a.end) == (b.start < b.end);
  return butterfly_type(coverage_of(a, b), same, start_layer);
}

}  // namespace tempo_bf
