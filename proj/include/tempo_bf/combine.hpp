#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <iterator>
#include <utility>
#include <vector>

#include "tempo_bf/classify.hpp"
#include "tempo_bf/timestamp_index.hpp"
#include "tempo_bf/twin_index.hpp"
#include "tempo_bf/types.hpp"
#include "tempo_bf/wedge.hpp"

namespace tempo_bf {

/// Crosses every wedge of `left` with every wedge of `right`.
///
/// Wedges are visited in descending t_s rounds. Each round first evicts
/// indexed wedges whose arrival is past maxn + delta, then calls
/// `query(w, same, diff)` for each wedge at t_s == maxn against the opposite
/// side's indexes (same direction, opposite direction), and only then
/// inserts the round's wedges. Equal-t_s wedges are therefore never paired.
///
/// `index` is caller-owned scratch: slots 0/1 hold left forward/backward,
/// slots 2/3 right forward/backward.
template <class Index, class Query>
void set_cross(WedgeSetView left, WedgeSetView right, Duration delta, std::array<Index, 4>& index,
               Query&& query) {
  if ((left.forward.empty() && left.backward.empty()) ||
      (right.forward.empty() && right.backward.empty()))
    return;
  const std::array<std::span<const Wedge>, 4> part{left.forward, left.backward, right.forward,
                                                   right.backward};
  for (auto& ix : index) ix.clear();
  std::array<std::size_t, 4> ptr{}, pre{};
  for (;;) {
    bool pending = false;
    Timestamp maxn = std::numeric_limits<Timestamp>::min();
    for (std::size_t b = 0; b < 4; ++b) {
      if (ptr[b] < part[b].size()) {
        pending = true;
        maxn = std::max(maxn, part[b][ptr[b]].ts);
      }
    }
    if (!pending) break;

    const Timestamp bound = add_saturated(maxn, delta);
    for (std::size_t b = 0; b < 4; ++b) {
      index[b].erase_above(bound);
      pre[b] = ptr[b];
    }
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t other = b < 2 ? 2 : 0;
      const std::size_t same = other + (b & 1U);
      const std::size_t diff = other + 1 - (b & 1U);
      while (ptr[b] < part[b].size() && part[b][ptr[b]].ts == maxn) {
        query(part[b][ptr[b]], std::as_const(index[same]), std::as_const(index[diff]));
        ++ptr[b];
      }
    }
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t k = pre[b]; k < ptr[b]; ++k) index[b].insert(part[b][k]);
  }
}

/// A run of wedges in a shared buffer: `forward` wedges starting at `begin`
/// followed by `backward` wedges.
struct WedgeBlock {
  std::size_t begin = 0;
  std::size_t forward = 0;
  std::size_t backward = 0;

  std::size_t size() const noexcept { return forward + backward; }
};

/// Mergesort-shaped combination of adjacent wedge blocks. Each block must
/// hold the wedges of one middle vertex, sorted by WedgePriorityLess within
/// each direction, and the blocks must tile the buffer in order. Each
/// recursion level crosses the merged left half with the merged right half,
/// so only wedges with different middle vertices meet. Returns the number of
/// set_cross calls.
template <class Index, class Query>
std::size_t combine(std::span<Wedge> buffer, std::span<WedgeBlock> blocks, Duration delta,
                    std::array<Index, 4>& index, std::vector<Wedge>& scratch, Query&& query) {
  std::size_t crosses = 0;
  auto view = [&](const WedgeBlock& blk) {
    return WedgeSetView{buffer.subspan(blk.begin, blk.forward),
                        buffer.subspan(blk.begin + blk.forward, blk.backward)};
  };
  auto recur = [&](auto&& self, std::size_t p, std::size_t q) -> void {
    if (p + 1 >= q) return;
    const std::size_t mid = (p + q) / 2;
    self(self, p, mid);
    self(self, mid, q);
    auto& lhs = blocks[p];
    const auto& rhs = blocks[mid];
    const WedgeSetView l = view(lhs), r = view(rhs);
    set_cross(l, r, delta, index, query);
    ++crosses;

    scratch.clear();
    std::merge(l.forward.begin(), l.forward.end(), r.forward.begin(), r.forward.end(),
               std::back_inserter(scratch), WedgePriorityLess{});
    std::merge(l.backward.begin(), l.backward.end(), r.backward.begin(), r.backward.end(),
               std::back_inserter(scratch), WedgePriorityLess{});
    std::copy(scratch.begin(), scratch.end(), buffer.begin() + static_cast<std::ptrdiff_t>(lhs.begin));
    lhs.forward += rhs.forward;
    lhs.backward += rhs.backward;
  };
  recur(recur, 0, blocks.size());
  return crosses;
}

/// Per-type tally of one query against arrival-list indexes (binary search
/// inside each t_s list).
template <class Entry>
void tally_lists(const Wedge& w, const TimestampIndex<Entry>& same,
                 const TimestampIndex<Entry>& diff, Layer layer, CountVector& acc) {
  auto scan = [&](const TimestampIndex<Entry>& ix, bool same_dir) {
    for (const auto& [t, list] : ix) {
      if (t > w.ta) {
        acc.add(butterfly_type(Coverage::non_overlap, same_dir, layer), list.size());
      } else if (t < w.ta) {
        acc.add(butterfly_type(Coverage::intersecting, same_dir, layer),
                detail::count_sorted(list, Compare::greater, w.ta));
        acc.add(butterfly_type(Coverage::covering, same_dir, layer),
                detail::count_sorted(list, Compare::less, w.ta));
      }
    }
  };
  scan(same, true);
  scan(diff, false);
}

/// Per-type tally of one query by rank arithmetic on twin trees.
inline void tally_twin(const Wedge& w, const TwinOrderedIndex& same, const TwinOrderedIndex& diff,
                       Layer layer, CountVector& acc) {
  auto rank = [&](const TwinOrderedIndex& ix, bool same_dir) {
    if (ix.empty()) return;
    acc.add(butterfly_type(Coverage::non_overlap, same_dir, layer),
            ix.count_starts(Compare::greater, w.ta));
    acc.add(butterfly_type(Coverage::intersecting, same_dir, layer),
            ix.count_arrivals(Compare::greater, w.ta) - ix.count_starts(Compare::greater_equal, w.ta));
    acc.add(butterfly_type(Coverage::covering, same_dir, layer),
            ix.count_arrivals(Compare::less, w.ta));
  };
  rank(same, true);
  rank(diff, false);
}

}  // namespace tempo_bf
