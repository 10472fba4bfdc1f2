#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace tempo_bf;

namespace {

std::string render(const RandomGraphSpec& spec) {
  std::ostringstream out;
  write_edge_list(out, generate_random_graph(spec));
  return out.str();
}

}  // namespace

TEST(Generate, SeedStableOutput) {
  RandomGraphSpec spec{20, 30, 500, 0, 1000, true, 1.0, 77};
  EXPECT_EQ(render(spec), render(spec));
  auto other = spec;
  other.seed = 78;
  EXPECT_NE(render(spec), render(other));
}

TEST(Generate, EmptyGraphIsEmptyFile) {
  EXPECT_EQ(render(RandomGraphSpec{5, 5, 0, 0, 10, false, 1.0, 1}), "");
}

TEST(Generate, RespectsRangesAndSortsByTime) {
  RandomGraphSpec spec{4, 9, 2000, -50, 50, false, 1.0, 3};
  const auto list = generate_random_graph(spec);
  ASSERT_EQ(list.edges.size(), 2000u);
  for (std::size_t i = 0; i < list.edges.size(); ++i) {
    const auto& e = list.edges[i];
    EXPECT_LT(e.u, 4u);
    EXPECT_LT(e.v, 9u);
    EXPECT_GE(e.t, -50);
    EXPECT_LE(e.t, 50);
    if (i) {
      EXPECT_LE(list.edges[i - 1].t, e.t);
    }
  }
}

TEST(Generate, SkewedModeHasHeavyUpperVertices) {
  RandomGraphSpec spec{1000, 1000, 100000, 0, 1000000, true, 1.0, 9};
  const auto list = generate_random_graph(spec);
  std::vector<std::size_t> degree(spec.upper_count);
  for (const auto& e : list.edges) ++degree[e.u];
  std::sort(degree.begin(), degree.end());
  const auto median = degree[degree.size() / 2];
  EXPECT_GE(degree.back(), 10 * std::max<std::size_t>(median, 1));
}

TEST(Generate, BoundedDrawStaysInRange) {
  std::mt19937_64 rng(1);
  for (std::uint64_t n : {1ull, 2ull, 3ull, 1000ull, (1ull << 63) + 5})
    for (int i = 0; i < 1000; ++i) ASSERT_LT(detail::bounded_draw(rng, n), n);
}

TEST(Generate, RejectsImpossibleParameters) {
  EXPECT_THROW(generate_random_graph({0, 5, 10, 0, 10, false, 1.0, 1}), std::invalid_argument);
  EXPECT_THROW(generate_random_graph({5, 5, 10, 10, 0, false, 1.0, 1}), std::invalid_argument);
}
