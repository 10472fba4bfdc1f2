#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tempo_bf {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;
using Timestamp = std::int64_t;
// Maximum allowed span of a butterfly, in the same units as timestamps.
using Duration = std::uint64_t;

inline constexpr std::size_t kButterflyTypes = 6;

enum class Layer : std::uint8_t { upper = 0, lower = 1 };

/// Layer bit used by the xor conversion between the two decompositions.
constexpr std::size_t layer_bit(Layer layer) noexcept {
  return layer == Layer::upper ? 0U : 1U;
}

/// One timestamped interaction. `u` is a local id in the upper layer, `v` a
/// local id in the lower layer; the two namespaces never mix.
struct TemporalEdge {
  VertexId u = 0;
  VertexId v = 0;
  Timestamp t = 0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
  friend auto operator<=>(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Unsigned difference `later - earlier` for `earlier <= later`, exact over
/// the full signed range.
constexpr Duration time_gap(Timestamp earlier, Timestamp later) noexcept {
  return static_cast<Duration>(later) - static_cast<Duration>(earlier);
}

/// |a - b| <= delta without overflow.
constexpr bool within(Timestamp a, Timestamp b, Duration delta) noexcept {
  return a <= b ? time_gap(a, b) <= delta : time_gap(b, a) <= delta;
}

/// t + delta clamped to the largest timestamp.
constexpr Timestamp add_saturated(Timestamp t, Duration delta) noexcept {
  constexpr auto max = std::numeric_limits<Timestamp>::max();
  if (delta >= time_gap(t, max)) return max;
  return static_cast<Timestamp>(static_cast<Duration>(t) + delta);
}

/// t - delta clamped to the smallest timestamp.
constexpr Timestamp sub_saturated(Timestamp t, Duration delta) noexcept {
  constexpr auto min = std::numeric_limits<Timestamp>::min();
  if (delta >= time_gap(min, t)) return min;
  return static_cast<Timestamp>(static_cast<Duration>(t) - delta);
}

/// Six per-type butterfly counters C[0..5].
///
/// When TEMPO_BF_CHECKED_COUNTS is defined, additions are overflow checked.
/// Subtraction is always checked: a negative count means the caller removed
/// butterflies that were never added.
class CountVector {
 public:
  using value_type = std::uint64_t;

  constexpr CountVector() = default;
  constexpr CountVector(std::array<value_type, kButterflyTypes> values) : c_(values) {}

  constexpr value_type& operator[](std::size_t i) { return c_[i]; }
  constexpr const value_type& operator[](std::size_t i) const { return c_[i]; }

  void add(std::size_t type, value_type n) {
#ifdef TEMPO_BF_CHECKED_COUNTS
    if (c_[type] > std::numeric_limits<value_type>::max() - n)
      throw std::overflow_error("butterfly counter overflow on T" + std::to_string(type));
#endif
    c_[type] += n;
  }

  CountVector& operator+=(const CountVector& other) {
    for (std::size_t i = 0; i < kButterflyTypes; ++i) add(i, other.c_[i]);
    return *this;
  }

  CountVector& operator-=(const CountVector& other) {
    for (std::size_t i = 0; i < kButterflyTypes; ++i) {
      if (other.c_[i] > c_[i])
        throw std::logic_error("butterfly counter underflow on T" + std::to_string(i));
    }
    for (std::size_t i = 0; i < kButterflyTypes; ++i) c_[i] -= other.c_[i];
    return *this;
  }

  friend CountVector operator+(CountVector a, const CountVector& b) { return a += b; }
  friend CountVector operator-(CountVector a, const CountVector& b) { return a -= b; }

  value_type total() const noexcept {
    value_type sum = 0;
    for (auto x : c_) sum += x;
    return sum;
  }

  const std::array<value_type, kButterflyTypes>& values() const noexcept { return c_; }

  friend bool operator==(const CountVector&, const CountVector&) = default;

  friend std::ostream& operator<<(std::ostream& os, const CountVector& c) {
    os << '[';
    for (std::size_t i = 0; i < kButterflyTypes; ++i) os << (i ? "," : "") << c.c_[i];
    return os << ']';
  }

 private:
  std::array<value_type, kButterflyTypes> c_{};
};

}  // namespace tempo_bf
