#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <utility>

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include "tempo_bf/timestamp_index.hpp"
#include "tempo_bf/types.hpp"
#include "tempo_bf/wedge.hpp"

namespace tempo_bf {

/// Two synchronized order-statistics trees over the same wedges: one keyed
/// by arrival t_a, the other by start t_s. Every operation is logarithmic.
class TwinOrderedIndex {
 public:
  using Key = std::pair<Timestamp, std::uint64_t>;

  void clear() {
    by_arrival_.clear();
    by_start_.clear();
  }

  std::size_t size() const noexcept { return by_arrival_.size(); }
  bool empty() const noexcept { return by_arrival_.empty(); }

  void insert(Timestamp ts, Timestamp ta) {
    const auto id = next_id_++;
    by_arrival_.insert({Key{ta, id}, ts});
    by_start_.insert(Key{ts, id});
  }
  void insert(const Wedge& w) { insert(w.ts, w.ta); }

  /// Wedge with the largest arrival, as (t_s, t_a).
  std::optional<std::pair<Timestamp, Timestamp>> back() const {
    if (by_arrival_.empty()) return std::nullopt;
    auto it = std::prev(by_arrival_.end());
    return std::pair{it->second, it->first.first};
  }

  /// Erases the largest-arrival wedge from both trees.
  void pop_back() {
    auto it = std::prev(by_arrival_.end());
    by_start_.erase(Key{it->second, it->first.second});
    by_arrival_.erase(it);
  }

  /// Drops wedges whose arrival exceeds `bound`, from the back.
  void erase_above(Timestamp bound) {
    while (!by_arrival_.empty() && std::prev(by_arrival_.end())->first.first > bound) pop_back();
  }

  std::size_t count_arrivals(Compare op, Timestamp x) const { return rank(by_arrival_, op, x); }
  std::size_t count_starts(Compare op, Timestamp x) const { return rank(by_start_, op, x); }

 private:
  template <class Mapped>
  using Tree = __gnu_pbds::tree<Key, Mapped, std::less<Key>, __gnu_pbds::rb_tree_tag,
                                __gnu_pbds::tree_order_statistics_node_update>;

  template <class T>
  static std::size_t rank(const T& tree, Compare op, Timestamp x) {
    constexpr auto top = std::numeric_limits<std::uint64_t>::max();
    switch (op) {
      case Compare::less: return tree.order_of_key(Key{x, 0});
      case Compare::less_equal: return tree.order_of_key(Key{x, top});
      case Compare::greater: return tree.size() - tree.order_of_key(Key{x, top});
      case Compare::greater_equal: return tree.size() - tree.order_of_key(Key{x, 0});
    }
    return 0;
  }

  Tree<Timestamp> by_arrival_;          // (t_a, id) -> t_s
  Tree<__gnu_pbds::null_type> by_start_;  // (t_s, id)
  std::uint64_t next_id_ = 0;
};

}  // namespace tempo_bf
