#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "povnav/horizon.hpp"
#include "povnav/pathgen.hpp"

using namespace povnav;

namespace {

const ImageDims kVga{640, 480};
const CameraModel kCam{};

Hog hog_at(PixelCoord p) { return {p, 0.0, {}}; }

void expect_row_monotone(const VisualPath& path, ImageDims dims) {
  ASSERT_FALSE(path.points.empty());
  EXPECT_EQ(path.points.front(), start_pixel(dims));
  if (path.points.size() == 2 && path.points.back().row == dims.height - 1) return;  // HOG on the start row
  for (std::size_t i = 1; i < path.points.size(); ++i) EXPECT_LT(path.points[i].row, path.points[i - 1].row);
  if (path.mode == PathMode::kSafe) {
    for (std::size_t i = 1; i < path.points.size(); ++i) EXPECT_EQ(path.points[i - 1].row - path.points[i].row, 1);
  }
}

}  // namespace

TEST(SafeHalfwidth, PinholeExamples) {
  const RobotFootprint robot{0.25, 0.05};
  EXPECT_EQ(safe_halfwidth(479, kCam, robot, kVga), 144);
  EXPECT_EQ(safe_halfwidth(240, kCam, robot, kVga), 1);  // 0.5 rows below the principal row rounds to 0
  EXPECT_EQ(safe_halfwidth(239, kCam, robot, kVga), 1);
  EXPECT_EQ(safe_halfwidth(0, kCam, robot, kVga), 1);
  EXPECT_EQ(safe_halfwidth(379, kCam, robot, kVga), static_cast<int>(std::lround(0.3 * 139.5 / 0.5)));
  EXPECT_THROW((void)safe_halfwidth(480, kCam, robot, kVga), DomainError);
}

TEST(SafeHalfwidth, ClampedToHalfImage) {
  const RobotFootprint wide{5.0, 1.0};
  EXPECT_EQ(safe_halfwidth(479, kCam, wide, kVga), 320);
}

TEST(GeneratePath, EmptyCorridorIsStraight) {
  const auto hr = extract_horizon(NavigabilityImage(kVga, kNavigable));
  const auto path = generate_path(hr.processed, hog_at({0, 320}), kCam, {});
  EXPECT_EQ(path.mode, PathMode::kSafe);
  EXPECT_EQ(path.points.size(), 480u);
  for (const auto& p : path.points) EXPECT_EQ(p.col, 320);
}

TEST(GeneratePath, FreeSpaceFollowsTheStraightSegment) {
  const auto hr = extract_horizon(NavigabilityImage(kVga, kNavigable));
  const PixelCoord hog{0, 40};
  const auto path = generate_path(hr.processed, hog_at(hog), kCam, {});
  EXPECT_EQ(path.mode, PathMode::kSafe);
  for (const auto& p : path.points) EXPECT_NEAR(p.col, oracle::nominal_column(hog, p.row, kVga), 1);
}

TEST(GeneratePath, LeftIntrusionShiftsRight) {
  NavigabilityImage nav(kVga, kNavigable);
  // Obstacle left of the straight line, reaching into the safety span.
  for (int r = 300; r < 360; ++r) {
    for (int c = 150; c < 300; ++c) nav.at(r, c) = kBlocked;
  }
  const auto hr = extract_horizon(nav);
  const PixelCoord hog{250, 330};
  ASSERT_TRUE(hr.horizon.admits(hog));
  PathStats stats;
  const auto path = generate_path(hr.processed, hog_at(hog), kCam, {}, &stats);
  EXPECT_EQ(path.mode, PathMode::kSafe);
  ASSERT_TRUE(stats.first_blocked_row.has_value());
  bool shifted_right = false;
  for (const auto& p : path.points) {
    EXPECT_TRUE(oracle::span_clear(hr.processed, p.row, p.col, safe_halfwidth(p.row, kCam, {}, kVga)));
    shifted_right = shifted_right || p.col > oracle::nominal_column(hog, p.row, kVga) + 1;
  }
  EXPECT_TRUE(shifted_right);
  expect_row_monotone(path, kVga);
}

TEST(GeneratePath, NarrowGapFallsBack) {
  NavigabilityImage nav(kVga, kNavigable);
  // Two walls leaving a slit narrower than the safety span at every row below 300.
  for (int r = 0; r < 480; ++r) {
    for (int c = 0; c < 640; ++c) {
      if (r >= 300 && (c < 300 || c > 340)) nav.at(r, c) = kBlocked;
    }
  }
  const auto hr = extract_horizon(nav);
  PathStats stats;
  const auto path = generate_path(hr.processed, hog_at({300, 320}), kCam, {}, &stats);
  EXPECT_EQ(path.mode, PathMode::kFallback);
  EXPECT_GT(stats.skipped_rows, 0);
  EXPECT_FALSE(stats.first_blocked_cleared);
  expect_row_monotone(path, kVga);
}

TEST(GeneratePath, HogAtStartIsSinglePoint) {
  const auto hr = extract_horizon(NavigabilityImage(kVga, kBlocked));
  const auto path = generate_path(hr.processed, hog_at(start_pixel(kVga)), kCam, {});
  ASSERT_EQ(path.points.size(), 1u);
  EXPECT_EQ(path.mode, PathMode::kSafe);
}

TEST(GeneratePath, HogAboveHorizonIsContractViolation) {
  NavigabilityImage nav(kVga, kNavigable);
  nav.at(400, 320) = kBlocked;
  const auto hr = extract_horizon(nav);
  EXPECT_THROW((void)generate_path(hr.processed, hog_at({100, 320}), kCam, {}), ContractViolation);
  EXPECT_THROW((void)generate_path(hr.processed, hog_at({480, 320}), kCam, {}), ContractViolation);
}

TEST(GeneratePath, RandomImagesSafeSpansAndFallbackRule) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> th(-kPi / 2, kPi / 2);
  const ImageDims d{160, 120};
  const CameraModel cam = CameraModel::centered(d, 75.0, 0.5);
  int safe = 0;
  int fallback = 0;
  for (int i = 0; i < 300; ++i) {
    const auto hr = extract_horizon(oracle::random_navigability(rng, d, 1.0, 0.0));
    const Hog hog = select_hog(hr.horizon, th(rng), {});
    PathStats stats;
    const auto path = generate_path(hr.processed, hog, cam, {}, &stats);
    expect_row_monotone(path, d);
    EXPECT_EQ(path.points.back(), hog.pixel);
    if (path.mode == PathMode::kSafe) {
      ++safe;
      for (std::size_t k = 1; k + 1 < path.points.size(); ++k) {
        const auto& p = path.points[k];
        EXPECT_TRUE(oracle::span_clear(hr.processed, p.row, p.col, safe_halfwidth(p.row, cam, {}, d)));
      }
    } else {
      ++fallback;
    }
    if (stats.first_blocked_row) {
      const int r = *stats.first_blocked_row;
      EXPECT_EQ(stats.first_blocked_cleared,
                oracle::any_clearing_shift(hr.processed, r, -1, safe_halfwidth(r, cam, {}, d)));
    }
    // Linear time: a handful of passes over each spanned row.
    EXPECT_LE(stats.cell_touches, 4L * d.width * (d.height - hog.pixel.row + 1));
  }
  EXPECT_GT(safe, 0);
  EXPECT_GT(fallback, 0);
}

TEST(GeneratePath, Deterministic) {
  std::mt19937_64 rng(9);
  const auto hr = extract_horizon(oracle::random_navigability(rng, kVga, 2.0));
  const Hog hog = select_hog(hr.horizon, 0.2, {});
  const auto a = generate_path(hr.processed, hog, kCam, {});
  const auto b = generate_path(hr.processed, hog, kCam, {});
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.mode, b.mode);
}
