#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "tempo_bf/count.hpp"
#include "tempo_bf/edge_list.hpp"
#include "tempo_bf/types.hpp"

namespace tempo_bf {

struct RandomGraphSpec {
  std::size_t upper_count = 0;
  std::size_t lower_count = 0;
  std::size_t edge_count = 0;
  Timestamp time_min = 0;
  Timestamp time_max = 0;
  /// Draw upper endpoints from a Zipf law instead of uniformly.
  bool skewed = false;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 0;
};

namespace detail {

/// Uniform integer in [0, n) by multiply-shift with rejection. Unlike
/// std::uniform_int_distribution the sequence is fixed across standard
/// libraries, which keeps generated files byte-stable.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace detail

/// Seeded random temporal bipartite edge list, sorted by timestamp.
inline EdgeList generate_random_graph(const RandomGraphSpec& spec) {
  if (spec.edge_count > 0 && (spec.upper_count == 0 || spec.lower_count == 0))
    throw std::invalid_argument("generator needs non-empty layers for a non-empty graph");
  if (spec.time_max < spec.time_min) throw std::invalid_argument("generator time range is empty");
  if (spec.skewed && !(spec.zipf_exponent > 0.0)) throw std::invalid_argument("zipf exponent must be positive");

  EdgeList out;
  out.symbols = SymbolTable::identity(spec.upper_count, spec.lower_count);
  if (spec.edge_count == 0) return out;

  std::mt19937_64 rng(spec.seed);
  std::vector<double> cumulative;
  if (spec.skewed) {
    cumulative.resize(spec.upper_count);
    double sum = 0.0;
    for (std::size_t k = 0; k < spec.upper_count; ++k) {
      sum += 1.0 / std::pow(static_cast<double>(k + 1), spec.zipf_exponent);
      cumulative[k] = sum;
    }
  }
  const auto span = static_cast<std::uint64_t>(spec.time_max) - static_cast<std::uint64_t>(spec.time_min);

  out.edges.reserve(spec.edge_count);
  for (std::size_t i = 0; i < spec.edge_count; ++i) {
    VertexId u;
    if (spec.skewed) {
      const double r = unit_draw(rng) * cumulative.back();
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
      u = static_cast<VertexId>(std::min<std::size_t>(it - cumulative.begin(), spec.upper_count - 1));
    } else {
      u = static_cast<VertexId>(detail::bounded_draw(rng, spec.upper_count));
    }
    const auto v = static_cast<VertexId>(detail::bounded_draw(rng, spec.lower_count));
    const std::uint64_t offset = span == UINT64_MAX ? rng() : detail::bounded_draw(rng, span + 1);
    out.edges.push_back({u, v, static_cast<Timestamp>(static_cast<std::uint64_t>(spec.time_min) + offset)});
  }
  std::stable_sort(out.edges.begin(), out.edges.end(),
                   [](const TemporalEdge& a, const TemporalEdge& b) { return a.t < b.t; });
  return out;
}

}  // namespace tempo_bf
