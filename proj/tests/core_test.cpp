#include <gtest/gtest.h>

#include <cmath>

#include "povnav/core.hpp"

using namespace povnav;

TEST(Planning, OriginPixelMapsToZero) {
  for (ImageDims d : {ImageDims{100, 100}, ImageDims{7, 5}, ImageDims{640, 480}}) {
    EXPECT_EQ(to_planning(start_pixel(d), d), (PlanarPoint{0, 0}));
  }
}

TEST(Planning, HandComputedPixels) {
  const ImageDims d{100, 100};
  EXPECT_EQ(to_planning({0, 50}, d), (PlanarPoint{99, 0}));
  EXPECT_EQ(to_planning({99, 0}, d), (PlanarPoint{0, 50}));
  EXPECT_EQ(to_planning({99, 99}, d), (PlanarPoint{0, -49}));
}

TEST(Planning, OddWidthUsesFloorForOrigin) {
  const ImageDims d{7, 3};
  EXPECT_EQ(d.origin_col(), 3);
  EXPECT_EQ(to_planning({2, 0}, d), (PlanarPoint{0, 3}));
  EXPECT_EQ(to_planning({2, 6}, d), (PlanarPoint{0, -3}));
}

TEST(Planning, RoundTripIsExhaustiveIdentity) {
  for (ImageDims d : {ImageDims{2, 2}, ImageDims{5, 4}, ImageDims{9, 6}, ImageDims{16, 12}}) {
    for (int r = 0; r < d.height; ++r) {
      for (int c = 0; c < d.width; ++c) {
        const PixelCoord p{r, c};
        EXPECT_EQ(from_planning(to_planning(p, d), d), p);
      }
    }
  }
}

TEST(Planning, OutOfBoundsIsDomainError) {
  const ImageDims d{10, 10};
  EXPECT_THROW((void)to_planning({10, 0}, d), DomainError);
  EXPECT_THROW((void)to_planning({0, -1}, d), DomainError);
  EXPECT_THROW((void)from_planning({-1, 0}, d), DomainError);
  EXPECT_THROW((void)from_planning({0, 6}, d), DomainError);
}

TEST(PixelAngle, Examples) {
  EXPECT_DOUBLE_EQ(pixel_angle({1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(pixel_angle({0, 5}), kPi / 2);
  EXPECT_DOUBLE_EQ(pixel_angle({3, 3}), kPi / 4);
  EXPECT_THROW((void)pixel_angle({0, 0}), DomainError);
}

TEST(PixelAngle, AntisymmetricInY) {
  for (int x = 0; x < 20; ++x) {
    for (int y = 1; y < 20; ++y) EXPECT_DOUBLE_EQ(pixel_angle({x, -y}), -pixel_angle({x, y}));
  }
}

TEST(PixelAngle, InImagePixelsStayInFrontHalfPlane) {
  const ImageDims d{31, 17};
  for (int r = 0; r < d.height; ++r) {
    for (int c = 0; c < d.width; ++c) {
      const PlanarPoint p = to_planning({r, c}, d);
      if (p.x == 0 && p.y == 0) continue;
      EXPECT_LE(std::abs(pixel_angle(p)), kPi / 2);
    }
  }
}

TEST(WrapAngle, RangeIsHalfOpen) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), -kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), -kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi + 0.5), -kPi + 0.5, 1e-12);
  for (double a = -20.0; a < 20.0; a += 0.37) {
    const double w = wrap_angle(a);
    EXPECT_GE(w, -kPi);
    EXPECT_LT(w, kPi);
    EXPECT_NEAR(std::remainder(w - a, 2 * kPi), 0.0, 1e-9);
  }
}

TEST(Grid, RowMajorStorage) {
  Grid<int> g({3, 2}, 0);
  g.at(1, 2) = 7;
  EXPECT_EQ(g.cells()[5], 7);
  EXPECT_EQ(g.row_data(1)[2], 7);
  EXPECT_EQ((g[PixelCoord{1, 2}]), 7);
}

TEST(Grid, BinaryCheck) {
  NavigabilityImage n({4, 4}, kNavigable);
  EXPECT_TRUE(is_binary(n));
  n.at(0, 0) = 2;
  EXPECT_FALSE(is_binary(n));
}
