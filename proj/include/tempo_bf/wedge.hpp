#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tempo_bf/classify.hpp"
#include "tempo_bf/types.hpp"

namespace tempo_bf {

/// Normalized temporal wedge: `ts < ta` always holds. Backward wedges keep
/// their timestamps swapped and `forward == false`.
struct Wedge {
  Timestamp ts = 0;
  Timestamp ta = 0;
  VertexId mid = 0;
  bool forward = true;

  WedgeTimes raw() const noexcept { return forward ? WedgeTimes{ts, ta} : WedgeTimes{ta, ts}; }
  friend bool operator==(const Wedge&, const Wedge&) = default;
};

/// Wedge through `mid` with start-side edge at `t_start` and end-side edge at
/// `t_end`, or nullopt when it can never belong to a butterfly (equal
/// timestamps, or a gap wider than delta).
inline std::optional<Wedge> make_wedge(VertexId mid, Timestamp t_start, Timestamp t_end,
                                       Duration delta) {
  if (t_start == t_end || !within(t_start, t_end, delta)) return std::nullopt;
  if (t_start < t_end) return Wedge{t_start, t_end, mid, true};
  return Wedge{t_end, t_start, mid, false};
}

/// Strict "lower wedge priority" relation: larger ts first, then smaller ta.
/// Sorting with it yields the processing order of the combination step.
struct WedgePriorityLess {
  bool operator()(const Wedge& a, const Wedge& b) const noexcept {
    return a.ts != b.ts ? a.ts > b.ts : a.ta < b.ta;
  }
};

/// Wedges sharing one middle vertex (or, after merging, a group of middle
/// vertices), split by direction. Both halves follow WedgePriorityLess.
struct WedgeSetView {
  std::span<const Wedge> forward;
  std::span<const Wedge> backward;
};

}  // namespace tempo_bf
