#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <ostream>
#include <utility>

#include "tempo_bf/classify.hpp"
#include "tempo_bf/types.hpp"

namespace tempo_bf {

/// One temporal butterfly on upper vertices {u, w} and lower vertices
/// {v, x} (local ids, u < w and v < x). t_uv is the timestamp of edge u-v,
/// t_vw of w-v, t_ux of u-x and t_xw of w-x.
struct ButterflyInstance {
  std::uint8_t type = 0;
  VertexId u = 0, w = 0;
  VertexId v = 0, x = 0;
  Timestamp t_uv = 0, t_vw = 0, t_ux = 0, t_xw = 0;

  friend bool operator==(const ButterflyInstance&, const ButterflyInstance&) = default;
  friend auto operator<=>(const ButterflyInstance&, const ButterflyInstance&) = default;
};

/// Type recomputed from the instance's own timestamps.
inline std::size_t recompute_type(const ButterflyInstance& b) {
  return classify_type({b.t_uv, b.t_vw}, {b.t_ux, b.t_xw}, Layer::upper);
}

/// Builds the canonical instance for two wedges start-mid1-end and
/// start-mid2-end whose start vertex sits on `start_layer`. All ids local.
inline ButterflyInstance make_instance(std::size_t type, Layer start_layer, VertexId start,
                                       VertexId end, VertexId mid1, WedgeTimes w1, VertexId mid2,
                                       WedgeTimes w2) {
  // Edge timestamp by (upper, lower) endpoint pair.
  struct Corner {
    VertexId up, low;
    Timestamp t;
  };
  Corner c[4];
  if (start_layer == Layer::upper) {
    c[0] = {start, mid1, w1.start};
    c[1] = {end, mid1, w1.end};
    c[2] = {start, mid2, w2.start};
    c[3] = {end, mid2, w2.end};
  } else {
    c[0] = {mid1, start, w1.start};
    c[1] = {mid1, end, w1.end};
    c[2] = {mid2, start, w2.start};
    c[3] = {mid2, end, w2.end};
  }
  ButterflyInstance b;
  b.type = static_cast<std::uint8_t>(type);
  b.u = std::min({c[0].up, c[1].up, c[2].up, c[3].up});
  b.w = std::max({c[0].up, c[1].up, c[2].up, c[3].up});
  b.v = std::min({c[0].low, c[1].low, c[2].low, c[3].low});
  b.x = std::max({c[0].low, c[1].low, c[2].low, c[3].low});
  for (const auto& k : c) {
    if (k.up == b.u && k.low == b.v) b.t_uv = k.t;
    else if (k.up == b.w && k.low == b.v) b.t_vw = k.t;
    else if (k.up == b.u && k.low == b.x) b.t_ux = k.t;
    else b.t_xw = k.t;
  }
  return b;
}

inline std::ostream& operator<<(std::ostream& os, const ButterflyInstance& b) {
  return os << int(b.type) << " u" << b.u << " w" << b.w << " v" << b.v << " x" << b.x << " ("
            << b.t_uv << ',' << b.t_vw << ',' << b.t_ux << ',' << b.t_xw << ')';
}

}  // namespace tempo_bf
