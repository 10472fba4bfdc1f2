#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tempo_bf;

TEST(TimestampIndexTest, TableOperations) {
  TimestampIndex<> ix;
  ix.append(3, 5);
  ix.append(3, 9);
  ix.append(3, 12);
  ix.append(10, 12);
  EXPECT_EQ(ix.size(3), 3u);
  EXPECT_EQ(ix.count(3, Compare::greater, 7), 2u);
  EXPECT_EQ(ix.count(3, Compare::less, 9), 1u);
  EXPECT_EQ(ix.count(3, Compare::less_equal, 9), 2u);
  EXPECT_EQ(ix.count(3, Compare::greater_equal, 12), 1u);
  ix.pop_above(3, 9);
  EXPECT_EQ(ix.size(3), 2u);
  ix.erase_above(8);
  EXPECT_EQ(ix.size(3), 1u);
  EXPECT_TRUE(ix.empty(10));
  EXPECT_EQ(ix.key_count(), 1u);
  ix.erase(3);
  EXPECT_TRUE(ix.empty());
}

TEST(TwinIndexTest, RankArithmeticExample) {
  // Pairs (t_s, t_a): (3, 5), (10, 12), (2, 9).
  TwinOrderedIndex ix;
  ix.insert(3, 5);
  ix.insert(10, 12);
  ix.insert(2, 9);
  EXPECT_EQ(ix.count_starts(Compare::greater, 7), 1u);
  EXPECT_EQ(ix.count_arrivals(Compare::greater, 7) - ix.count_starts(Compare::greater_equal, 7), 1u);
  EXPECT_EQ(ix.count_arrivals(Compare::less, 7), 1u);
}

TEST(TwinIndexTest, DeleteByBound) {
  TwinOrderedIndex ix;
  ix.insert(2, 5);
  ix.insert(3, 9);
  ix.erase_above(6);
  EXPECT_EQ(ix.size(), 1u);
  EXPECT_EQ(ix.back(), (std::pair<Timestamp, Timestamp>{2, 5}));
  EXPECT_EQ(ix.count_starts(Compare::greater_equal, 3), 0u);
}

TEST(TwinIndexTest, StaysInSyncWithNaiveRecount) {
  std::mt19937_64 rng(17);
  TwinOrderedIndex ix;
  std::vector<std::pair<Timestamp, Timestamp>> naive;
  for (int step = 0; step < 3000; ++step) {
    if (rng() % 4 != 0 || naive.empty()) {
      const Timestamp ts = static_cast<Timestamp>(rng() % 50);
      const Timestamp ta = ts + 1 + static_cast<Timestamp>(rng() % 20);
      ix.insert(ts, ta);
      naive.push_back({ts, ta});
    } else {
      const Timestamp bound = static_cast<Timestamp>(rng() % 70);
      ix.erase_above(bound);
      std::erase_if(naive, [&](const auto& p) { return p.second > bound; });
    }
    ASSERT_EQ(ix.size(), naive.size());
    const Timestamp x = static_cast<Timestamp>(rng() % 70);
    for (auto op : {Compare::less, Compare::less_equal, Compare::greater, Compare::greater_equal}) {
      auto hit = [&](Timestamp v) {
        switch (op) {
          case Compare::less: return v < x;
          case Compare::less_equal: return v <= x;
          case Compare::greater: return v > x;
          default: return v >= x;
        }
      };
      std::size_t s = 0, a = 0;
      for (const auto& [ts, ta] : naive) {
        s += hit(ts);
        a += hit(ta);
      }
      ASSERT_EQ(ix.count_starts(op, x), s);
      ASSERT_EQ(ix.count_arrivals(op, x), a);
    }
  }
}

namespace {

// Crosses two single-wedge sets and returns the tallies of both engines.
std::pair<CountVector, CountVector> cross(Wedge a, Wedge b, Duration delta, Layer layer) {
  std::vector<Wedge> l{a}, r{b};
  auto view = [](const std::vector<Wedge>& v) {
    return v[0].forward ? WedgeSetView{v, {}} : WedgeSetView{{}, v};
  };
  CountVector lists, twins;
  std::array<TimestampIndex<Timestamp>, 4> ix1;
  std::array<TwinOrderedIndex, 4> ix2;
  set_cross(view(l), view(r), delta, ix1,
            [&](const Wedge& w, const auto& s, const auto& d) { tally_lists(w, s, d, layer, lists); });
  set_cross(view(l), view(r), delta, ix2,
            [&](const Wedge& w, const auto& s, const auto& d) { tally_twin(w, s, d, layer, twins); });
  return {lists, twins};
}

}  // namespace

TEST(SetCross, TwoSingletonBuckets) {
  auto [lists, twins] = cross({1, 2, 0, true}, {3, 4, 1, true}, 10, Layer::upper);
  EXPECT_EQ(lists, support::counts({1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(twins, lists);
  std::tie(lists, twins) = cross({1, 2, 0, true}, {3, 4, 1, true}, 2, Layer::upper);
  EXPECT_EQ(lists, CountVector{});
  EXPECT_EQ(twins, CountVector{});
}

TEST(SetCross, QueryExamples) {
  // Query wedge (1, 7) against stored (10, 12): non-overlap.
  EXPECT_EQ(cross({1, 7, 0, true}, {10, 12, 1, true}, 20, Layer::upper).second, support::counts({1, 0, 0, 0, 0, 0}));
  // Against (3, 9) and (3, 5): one intersecting, one covering.
  std::vector<Wedge> l{{1, 7, 0, true}}, r{{3, 5, 1, true}, {3, 9, 1, true}};
  CountVector acc;
  std::array<TimestampIndex<Timestamp>, 4> ix;
  set_cross(WedgeSetView{l, {}}, WedgeSetView{r, {}}, 20, ix,
            [&](const Wedge& w, const auto& s, const auto& d) { tally_lists(w, s, d, Layer::upper, acc); });
  EXPECT_EQ(acc, support::counts({0, 1, 1, 0, 0, 0}));
  // Opposite direction, covering, from the lower layer.
  EXPECT_EQ(cross({1, 7, 0, true}, {3, 5, 1, false}, 20, Layer::lower).first, support::counts({0, 0, 0, 0, 1, 0}));
}

TEST(SetCross, EqualStartTimesNeverPair) {
  EXPECT_EQ(cross({1, 3, 0, true}, {1, 4, 1, true}, 10, Layer::upper).second, CountVector{});
}

TEST(Combine, SingleBlockMakesNoCross) {
  std::vector<Wedge> buf{{1, 2, 0, true}, {0, 3, 0, true}};
  std::vector<WedgeBlock> blocks{{0, 2, 0}};
  std::array<TwinOrderedIndex, 4> ix;
  std::vector<Wedge> scratch;
  CountVector acc;
  EXPECT_EQ(combine(std::span<Wedge>(buf), std::span<WedgeBlock>(blocks), 10, ix, scratch,
                    [&](const Wedge& w, const auto& s, const auto& d) { tally_twin(w, s, d, Layer::upper, acc); }),
            0u);
  EXPECT_EQ(acc, CountVector{});
}
