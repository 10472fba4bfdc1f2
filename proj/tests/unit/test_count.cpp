#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace tempo_bf;
using support::counts;

namespace {

struct AllEngines {
  CountVector baseline, optimized, extreme;
};

AllEngines run_all(std::size_t upper, std::size_t lower, const std::vector<TemporalEdge>& edges, Duration delta) {
  auto g = TemporalBipartiteGraph::from_edges(upper, lower, edges);
  const auto p = prepare_for_counting(g);
  return {count_baseline(g, p, delta), count_optimized(g, p, delta), count_extreme(g, p, delta)};
}

void expect_all(std::size_t upper, std::size_t lower, const std::vector<TemporalEdge>& edges, Duration delta,
                const CountVector& want) {
  EXPECT_EQ(oracle::oracle_count(edges, delta), want);
  const auto r = run_all(upper, lower, edges, delta);
  EXPECT_EQ(r.baseline, want);
  EXPECT_EQ(r.optimized, want);
  EXPECT_EQ(r.extreme, want);
}

}  // namespace

TEST(Count, FixtureF1) {
  expect_all(2, 2, support::fixture_f1(), 3, counts({0, 1, 0, 0, 0, 0}));
  expect_all(2, 2, support::fixture_f1(), 2, CountVector{});
}

TEST(Count, FixtureF2) { expect_all(2, 2, support::fixture_f2(), 10, counts({0, 1, 0, 0, 1, 0})); }

TEST(Count, QueryRegionsOnSmallGraph) {
  // Start u0, end u1. Wedge (1, 7) through v0 meets (3, 5) through v1 and
  // (3, 9) through v2; the latter two share a start time.
  std::vector<TemporalEdge> e{{0, 0, 1}, {1, 0, 7}, {0, 1, 3}, {1, 1, 5}, {0, 2, 3}, {1, 2, 9}};
  expect_all(2, 3, e, 20, counts({0, 1, 1, 0, 0, 0}));
}

TEST(Count, OppositeDirectionFromLowerStart) {
  // Start v0, end v1 on the lower layer. Wedge (1, 7) through u0, reversed
  // wedge (5, 3) through u1 nested inside it.
  std::vector<TemporalEdge> e{{0, 0, 1}, {0, 1, 7}, {1, 0, 5}, {1, 1, 3}};
  auto want = oracle::oracle_count(e, 20);
  EXPECT_EQ(want.total(), 1u);
  EXPECT_EQ(run_all(2, 2, e, 20).extreme, want);
}

TEST(Count, WedgeFilterBoundaries) {
  // Every wedge has equal timestamps.
  std::vector<TemporalEdge> same{{0, 0, 4}, {1, 0, 4}, {0, 1, 4}, {1, 1, 4}};
  expect_all(2, 2, same, 100, CountVector{});
  // A wedge gap of 8 cannot sit inside a span of 3.
  std::vector<TemporalEdge> wide{{0, 0, 1}, {1, 0, 9}, {0, 1, 2}, {1, 1, 3}};
  expect_all(2, 2, wide, 3, CountVector{});
}

TEST(Count, ZeroDeltaAndTinyGraphs) {
  expect_all(2, 2, support::fixture_f2(), 0, CountVector{});
  expect_all(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 3}}, 10, CountVector{});
  expect_all(0, 0, {}, 10, CountVector{});
}

TEST(Count, EnginesMatchOracleOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = support::random_small_graph(seed);
    const auto want = oracle::oracle_count(s.edges, s.delta);
    const auto r = run_all(s.upper, s.lower, s.edges, s.delta);
    ASSERT_EQ(r.baseline, want) << "seed " << seed;
    ASSERT_EQ(r.optimized, want) << "seed " << seed;
    ASSERT_EQ(r.extreme, want) << "seed " << seed;
  }
}

TEST(Count, DurationMonotonicity) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = support::random_small_graph(seed, 6, 60, 100);
    CountVector prev;
    for (Duration d : {0, 1, 3, 7, 15, 31, 63, 127}) {
      const auto c = run_all(s.upper, s.lower, s.edges, d).extreme;
      for (std::size_t i = 0; i < kButterflyTypes; ++i) ASSERT_LE(prev[i], c[i]);
      prev = c;
    }
  }
}

TEST(Count, WedgePrefilterNeverChangesCounts) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = support::random_small_graph(seed);
    auto g = TemporalBipartiteGraph::from_edges(s.upper, s.lower, s.edges);
    const auto p = prepare_for_counting(g);
    EXPECT_EQ(count_baseline(g, p, s.delta, {false}), count_baseline(g, p, s.delta, {true}));
  }
}

TEST(Count, EachStaticButterflyExaminedOnce) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = support::random_small_graph(seed, 6, 30);
    auto g = TemporalBipartiteGraph::from_edges(s.upper, s.lower, s.edges);
    const auto p = prepare_for_counting(g);
    BaselineStats stats;
    count_baseline(g, p, s.delta, {}, &stats);
    ASSERT_EQ(stats.pairs_examined, oracle::static_census(s.edges)) << "seed " << seed;
  }
}

TEST(Count, RequiresPriorityLayout) {
  auto g = TemporalBipartiteGraph::from_edges(2, 2, support::fixture_f1());
  const auto p = compute_vertex_priority(g);
  EXPECT_THROW(count_extreme(g, p, 3), std::logic_error);
  sort_adjacency_by_priority(g, p);
  EXPECT_THROW(count_extreme(g, VertexPriority{}, 3), std::invalid_argument);
  EXPECT_NO_THROW(count_extreme(g, p, 3));
}

TEST(Sampling, ProbabilityOneIsExact) {
  const auto g = TemporalBipartiteGraph::from_edges(2, 2, support::fixture_f1());
  const auto est = count_sampled(g, 3, 1.0, 99);
  const EstimateVector want{0, 1, 0, 0, 0, 0};
  EXPECT_EQ(est, want);
}

TEST(Sampling, DroppedEdgeLeavesNothing) {
  const auto f1 = support::fixture_f1();
  const auto g = TemporalBipartiteGraph::from_edges(2, 2, f1);
  // Find a seed whose draws drop the last edge (u2, v2, 4).
  std::uint64_t seed = 0;
  for (;; ++seed) {
    std::mt19937_64 rng(seed);
    bool kept[4];
    for (bool& k : kept) k = unit_draw(rng) < 0.5;
    if (!kept[3]) break;
  }
  const auto est = count_sampled(g, 3, 0.5, seed);
  for (double x : est) EXPECT_EQ(x, 0.0);
}

TEST(Sampling, RejectsBadProbability) {
  const auto g = TemporalBipartiteGraph::from_edges(2, 2, support::fixture_f1());
  EXPECT_THROW(count_sampled(g, 3, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(count_sampled(g, 3, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(count_sampled(g, 3, std::nan(""), 1), std::invalid_argument);
}

TEST(Sampling, MeanTracksExactCount) {
  RandomGraphSpec spec{6, 6, 100, 0, 60, false, 1.0, 5};
  const auto list = generate_random_graph(spec);
  const auto g = list.to_graph();
  const Duration delta = 30;
  const auto exact = count_edges(6, 6, list.edges, delta);
  ASSERT_GT(exact.total(), 50u);
  constexpr int runs = 200;
  std::array<double, kButterflyTypes> sum{}, sq{};
  for (int r = 0; r < runs; ++r) {
    const auto est = count_sampled(g, delta, 0.7, 1000 + r);
    for (std::size_t i = 0; i < kButterflyTypes; ++i) {
      sum[i] += est[i];
      sq[i] += est[i] * est[i];
    }
  }
  for (std::size_t i = 0; i < kButterflyTypes; ++i) {
    const double mean = sum[i] / runs;
    const double var = std::max(0.0, (sq[i] - runs * mean * mean) / (runs - 1));
    const double se = std::sqrt(var / runs);
    EXPECT_LE(std::abs(mean - static_cast<double>(exact[i])), 3.0 * se + 1e-9) << "type " << i;
  }
}
