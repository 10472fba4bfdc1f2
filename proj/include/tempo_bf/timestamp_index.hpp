#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <type_traits>
#include <vector>

#include "tempo_bf/types.hpp"
#include "tempo_bf/wedge.hpp"

namespace tempo_bf {

enum class Compare { less, less_equal, greater, greater_equal };

namespace detail {

constexpr Timestamp arrival_of(Timestamp t) noexcept { return t; }
constexpr Timestamp arrival_of(const Wedge& w) noexcept { return w.ta; }

template <class Entry>
Entry entry_from(const Wedge& w) {
  if constexpr (std::is_same_v<Entry, Timestamp>) {
    return w.ta;
  } else {
    return w;
  }
}

/// Number of elements of an arrival-ascending list satisfying `arrival op x`.
template <class Entry>
std::size_t count_sorted(const std::vector<Entry>& list, Compare op, Timestamp x) {
  auto less_than = [](const Entry& e, Timestamp v) { return arrival_of(e) < v; };
  auto greater_than = [](Timestamp v, const Entry& e) { return v < arrival_of(e); };
  const auto n = list.size();
  switch (op) {
    case Compare::less:
      return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), x, less_than) - list.begin());
    case Compare::less_equal:
      return static_cast<std::size_t>(std::upper_bound(list.begin(), list.end(), x, greater_than) - list.begin());
    case Compare::greater:
      return n - count_sorted(list, Compare::less_equal, x);
    case Compare::greater_equal:
      return n - count_sorted(list, Compare::less, x);
  }
  return 0;
}

}  // namespace detail

/// Map from a wedge start time t_s to the arrival-ascending list of wedges
/// (or bare t_a values) inserted under it.
///
/// Ascending order holds because wedges are inserted in wedge-priority
/// order: within one t_s, arrivals come smallest first. pop_above is linear
/// in the number of removed elements; count is logarithmic in list length.
template <class Entry = Timestamp>
class TimestampIndex {
 public:
  using List = std::vector<Entry>;
  using const_iterator = typename std::map<Timestamp, List>::const_iterator;

  void clear() { lists_.clear(); }
  bool empty() const noexcept { return lists_.empty(); }
  std::size_t key_count() const noexcept { return lists_.size(); }

  void erase(Timestamp t) { lists_.erase(t); }
  std::size_t size(Timestamp t) const {
    auto it = lists_.find(t);
    return it == lists_.end() ? 0 : it->second.size();
  }
  bool empty(Timestamp t) const { return size(t) == 0; }
  void append(Timestamp t, const Entry& e) { lists_[t].push_back(e); }

  /// Removes all elements of list t whose arrival exceeds x.
  void pop_above(Timestamp t, Timestamp x) {
    auto it = lists_.find(t);
    if (it == lists_.end()) return;
    auto& list = it->second;
    while (!list.empty() && detail::arrival_of(list.back()) > x) list.pop_back();
  }

  std::size_t count(Timestamp t, Compare op, Timestamp x) const {
    auto it = lists_.find(t);
    return it == lists_.end() ? 0 : detail::count_sorted(it->second, op, x);
  }

  /// Drops every element with arrival above `bound` and erases empty keys.
  void erase_above(Timestamp bound) {
    for (auto it = lists_.begin(); it != lists_.end();) {
      auto& list = it->second;
      while (!list.empty() && detail::arrival_of(list.back()) > bound) list.pop_back();
      it = list.empty() ? lists_.erase(it) : std::next(it);
    }
  }

  void insert(const Wedge& w) { append(w.ts, detail::entry_from<Entry>(w)); }

  const_iterator begin() const { return lists_.begin(); }
  const_iterator end() const { return lists_.end(); }

 private:
  std::map<Timestamp, List> lists_;
};

}  // namespace tempo_bf
