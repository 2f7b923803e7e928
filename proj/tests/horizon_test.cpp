#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "povnav/horizon.hpp"

using namespace povnav;

TEST(Horizon, AllNavigableSitsOnTopRow) {
  const NavigabilityImage nav({12, 9}, kNavigable);
  const auto hr = extract_horizon(nav);
  for (int h : hr.horizon.heights) EXPECT_EQ(h, 0);
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 12; ++c) EXPECT_EQ(hr.processed.at(r, c), r == 0 ? kBlocked : kNavigable);
  }
}

TEST(Horizon, AllBlockedSitsOnBottomRow) {
  const NavigabilityImage nav({12, 9}, kBlocked);
  const auto hr = extract_horizon(nav);
  for (int h : hr.horizon.heights) EXPECT_EQ(h, 8);
  for (const auto& p : hr.horizon.pixels) EXPECT_EQ(p.row, 8);
}

TEST(Horizon, SinglePixelExample) {
  NavigabilityImage nav({10, 10}, kNavigable);
  nav.at(4, 3) = kBlocked;
  const auto h = extract_horizon(nav).horizon.heights;
  for (int c = 0; c < 10; ++c) EXPECT_EQ(h[std::size_t(c)], c == 3 ? 4 : 0);
}

TEST(Horizon, PixelSetIsBoundaryBridgesAndBorders) {
  // Heights 0, 5, 5, 2 on a 4 x 8 image.
  const auto hr = horizon_from_heights({0, 5, 5, 2}, {4, 8});
  const std::set<PixelCoord> got(hr.horizon.pixels.begin(), hr.horizon.pixels.end());
  std::set<PixelCoord> want;
  for (int r = 0; r < 8; ++r) want.insert({r, 0});  // left border incl. boundary at row 0
  for (int r = 1; r < 5; ++r) want.insert({r, 0});  // bridge down column 0 to row 4
  want.insert({5, 1});
  want.insert({5, 2});
  for (int r = 3; r < 5; ++r) want.insert({r, 3});  // bridge up column 3
  for (int r = 2; r < 8; ++r) want.insert({r, 3});  // right border incl. boundary
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.size(), hr.horizon.pixels.size());
}

TEST(Horizon, PixelSetIsEightConnectedWithoutDuplicates) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto nav = oracle::random_navigability(rng, {40, 30}, 1.0, 0.02);
    const auto& px = extract_horizon(nav).horizon.pixels;
    const std::set<PixelCoord> set(px.begin(), px.end());
    ASSERT_EQ(set.size(), px.size());
    std::set<PixelCoord> seen{px.front()};
    std::vector<PixelCoord> todo{px.front()};
    while (!todo.empty()) {
      const PixelCoord p = todo.back();
      todo.pop_back();
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const PixelCoord q{p.row + dr, p.col + dc};
          if (set.count(q) && seen.insert(q).second) todo.push_back(q);
        }
      }
    }
    EXPECT_EQ(seen.size(), set.size());
  }
}

TEST(Horizon, MatchesColumnScanOracleAndDefinition) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const ImageDims dims{32 + int(i % 7), 24 + int(i % 5)};
    const auto nav = oracle::random_navigability(rng, dims, 1.2, 0.03);
    const auto hr = extract_horizon(nav);
    ASSERT_EQ(hr.horizon.heights, oracle::heights(nav));
    for (int c = 0; c < dims.width; ++c) {
      const int h = hr.horizon.heights[std::size_t(c)];
      for (int r = h + 1; r < dims.height; ++r) {
        ASSERT_EQ(hr.processed.at(r, c), kNavigable);
        ASSERT_EQ(nav.at(r, c), kNavigable);  // maximality: nothing raw-blocked below
      }
      if (nav.at(h, c) == kNavigable) {
        ASSERT_EQ(h, 0);
      }
      // Processed is at least as blocked as raw.
      for (int r = 0; r < dims.height; ++r) {
        if (nav.at(r, c) == kBlocked) {
          ASSERT_EQ(hr.processed.at(r, c), kBlocked);
        }
      }
    }
  }
}

TEST(Horizon, HeightsSizeMismatchIsDomainError) {
  EXPECT_THROW((void)horizon_from_heights({1, 2}, {3, 4}), DomainError);
  EXPECT_THROW((void)horizon_from_heights({0}, {1, 4}), DomainError);
}

TEST(HorizonFilter, LimitsPerColumnChange) {
  HorizonFilter f(3);
  EXPECT_EQ(f.apply({10, 10, 10}), (std::vector<int>{10, 10, 10}));
  // No history yet: one row per frame.
  EXPECT_EQ(f.apply({0, 10, 20}), (std::vector<int>{9, 10, 11}));
  f.reset();
  EXPECT_EQ(f.apply({0, 10, 20}), (std::vector<int>{0, 10, 20}));
}
