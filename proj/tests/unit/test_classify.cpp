#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tempo_bf;

TEST(Classify, CanonicalExamples) {
  EXPECT_EQ(classify_type({1, 2}, {3, 4}, Layer::upper), 0u);
  EXPECT_EQ(classify_type({1, 3}, {2, 4}, Layer::upper), 1u);
  EXPECT_EQ(classify_type({1, 2}, {4, 3}, Layer::upper), 3u);
  EXPECT_EQ(classify_type({1, 3}, {2, 4}, Layer::lower), 0u);
}

TEST(Classify, CoversAllSixTypes) {
  EXPECT_EQ(classify_type({1, 4}, {2, 3}, Layer::upper), 2u);
  EXPECT_EQ(classify_type({1, 3}, {4, 2}, Layer::upper), 4u);
  EXPECT_EQ(classify_type({1, 4}, {3, 2}, Layer::upper), 5u);
}

TEST(Classify, RejectsEqualTimestamps) {
  EXPECT_THROW(classify_type({1, 2}, {2, 3}, Layer::upper), std::invalid_argument);
  EXPECT_THROW(classify_type({1, 1}, {2, 3}, Layer::upper), std::invalid_argument);
}

TEST(Classify, EveryOrderingHasOneTypeAndTypesAreBalanced) {
  // Each of the 24 timestamp orderings of a butterfly falls in one type; the
  // six types take four orderings each.
  std::array<int, 4> t{1, 2, 3, 4};
  std::array<int, kButterflyTypes> hits{};
  do {
    ++hits[classify_type({t[0], t[1]}, {t[2], t[3]}, Layer::upper)];
  } while (std::next_permutation(t.begin(), t.end()));
  for (int h : hits) EXPECT_EQ(h, 4);
}

TEST(Classify, InvolutionAndSymmetries) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::array<Timestamp, 4> t{};
    for (auto& x : t) x = static_cast<Timestamp>(rng() % 1000);
    if (std::set<Timestamp>(t.begin(), t.end()).size() < 4) continue;
    const WedgeTimes a{t[0], t[1]}, b{t[2], t[3]};
    const auto up = classify_type(a, b, Layer::upper);
    EXPECT_EQ(classify_type(a, b, Layer::lower), up ^ 1U);
    EXPECT_EQ(classify_type(b, a, Layer::upper), up);
    // Reading the butterfly from the end vertex reverses both wedges.
    EXPECT_EQ(classify_type({a.end, a.start}, {b.end, b.start}, Layer::upper), up);
    // Reading it from the other layer exchanges the wedge pairing.
    EXPECT_EQ(classify_type({a.start, b.start}, {a.end, b.end}, Layer::lower), up);
  }
}

TEST(Wedge, NormalizationAndFilter) {
  const auto fwd = make_wedge(4, 1, 3, 5);
  ASSERT_TRUE(fwd);
  EXPECT_TRUE(fwd->forward);
  const auto back = make_wedge(4, 3, 1, 5);
  ASSERT_TRUE(back);
  EXPECT_FALSE(back->forward);
  EXPECT_EQ(back->ts, 1);
  EXPECT_EQ(back->ta, 3);
  EXPECT_EQ(back->raw().start, 3);
  EXPECT_FALSE(make_wedge(0, 1, 9, 3));
  EXPECT_FALSE(make_wedge(0, 2, 2, 3));
  EXPECT_TRUE(make_wedge(0, 1, 4, 3));
}

TEST(Wedge, PriorityOrder) {
  std::vector<Wedge> w{{1, 5}, {3, 9}, {3, 4}, {2, 3}};
  std::sort(w.begin(), w.end(), WedgePriorityLess{});
  EXPECT_EQ(w[0], (Wedge{3, 4}));
  EXPECT_EQ(w[1], (Wedge{3, 9}));
  EXPECT_EQ(w[2], (Wedge{2, 3}));
  EXPECT_EQ(w[3], (Wedge{1, 5}));
}

TEST(CountVectorTest, ArithmeticAndUnderflow) {
  auto a = support::counts({1, 2, 3, 4, 5, 6});
  const auto b = support::counts({1, 1, 1, 1, 1, 1});
  EXPECT_EQ((a - b).total(), 15u);
  a -= b;
  a += b;
  EXPECT_EQ(a, support::counts({1, 2, 3, 4, 5, 6}));
  EXPECT_THROW(CountVector{} -= b, std::logic_error);
}

TEST(CountVectorTest, CheckedAdditionOverflows) {
  CountVector c;
  c.add(0, std::numeric_limits<std::uint64_t>::max());
  EXPECT_THROW(c.add(0, 1), std::overflow_error);
}
