#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "povnav/segmentation.hpp"
#include "povnav/sim/world.hpp"

using namespace povnav;

namespace {

Vec3 tilted(double deg) {
  const double a = deg * kPi / 180.0;
  return {std::sin(a), 0.0, std::cos(a)};
}

}  // namespace

TEST(ClassTable, StandardTableMapsGroundAndStructures) {
  const auto t = NavigabilityTable::standard();
  SemanticImage seg({6, 1}, classes::kGrass);
  seg.at(0, 1) = classes::kTrail;
  seg.at(0, 2) = classes::kAsphalt;
  seg.at(0, 3) = classes::kSky;
  seg.at(0, 4) = classes::kTree;
  seg.at(0, 5) = classes::kBuilding;
  const auto nav = classes_to_navigability(seg, t);
  const std::vector<std::uint8_t> expected{0, 0, 0, 1, 1, 1};
  EXPECT_EQ(nav.cells(), expected);
}

TEST(ClassTable, SingleNavigableClassGivesAllZero) {
  SemanticImage seg({8, 6}, classes::kAsphalt);
  const auto nav = classes_to_navigability(seg, NavigabilityTable::standard());
  EXPECT_EQ(std::accumulate(nav.cells().begin(), nav.cells().end(), 0), 0);
}

TEST(ClassTable, UnknownClassFallsBackToNonNavigable) {
  SemanticImage seg({2, 2}, 42);
  seg.at(0, 0) = classes::kUnlabeled;
  const auto nav = classes_to_navigability(seg, NavigabilityTable::standard());
  for (auto v : nav.cells()) EXPECT_EQ(v, kBlocked);

  NavigabilityTable permissive(Navigability::kNavigable);
  EXPECT_EQ(classes_to_navigability(seg, permissive).at(1, 1), kNavigable);
}

TEST(ClassTable, CommutesWithClassPermutation) {
  std::mt19937_64 rng(3);
  std::vector<std::uint8_t> perm(256);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto table = NavigabilityTable::standard();
  NavigabilityTable permuted;
  for (int c = 0; c < 256; ++c) permuted.set(perm[std::size_t(c)], table.lookup(std::uint8_t(c)));

  SemanticImage seg({20, 10}, 0);
  std::uniform_int_distribution<int> cls(0, 12);
  for (auto& v : seg.cells()) v = std::uint8_t(cls(rng));
  SemanticImage seg_p = seg;
  for (auto& v : seg_p.cells()) v = perm[v];
  EXPECT_EQ(classes_to_navigability(seg, table), classes_to_navigability(seg_p, permuted));
}

TEST(NormalThreshold, Examples) {
  NormalImage n({5, 1}, tilted(0));
  n.at(0, 1) = {1.0, 0.0, 0.0};
  n.at(0, 2) = tilted(19);
  n.at(0, 3) = tilted(21);
  n.at(0, 4) = undefined_normal();
  const auto nav = normals_to_navigability(n, 20.0);
  const std::vector<std::uint8_t> expected{0, 1, 0, 1, 1};
  EXPECT_EQ(nav.cells(), expected);
}

TEST(NormalThreshold, MonotoneInTolerance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> deg(0.0, 80.0);
  NormalImage n({30, 20}, {});
  for (auto& v : n.cells()) v = tilted(deg(rng));
  for (double t1 = 5; t1 < 85; t1 += 10) {
    const auto a = normals_to_navigability(n, t1);
    const auto b = normals_to_navigability(n, t1 + 5);
    for (std::size_t i = 0; i < a.cells().size(); ++i) {
      if (a.cells()[i] == kNavigable) {
        EXPECT_EQ(b.cells()[i], kNavigable);
      }
    }
  }
}

TEST(NormalThreshold, RejectsBadTolerance) {
  NormalImage n({2, 2}, tilted(0));
  EXPECT_THROW((void)normals_to_navigability(n, 0.0), DomainError);
  EXPECT_THROW((void)normals_to_navigability(n, 90.0), DomainError);
}

TEST(SurfaceNormals, FlatGroundPointsUp) {
  const ImageDims dims{160, 120};
  const auto cam = CameraModel::centered(dims, 75.0, 0.5);
  const auto frame = sim::render_camera(sim::World{}, {}, cam, dims);
  const auto normals = surface_normals(frame.depth, cam);
  int ground = 0;
  int up = 0;
  for (int r = 0; r < dims.height; ++r) {
    for (int c = 0; c < dims.width; ++c) {
      if (frame.semantic.at(r, c) != classes::kAsphalt) continue;
      const Vec3 v = normals.at(r, c);
      if (!v.is_finite()) continue;
      ++ground;
      if (v.z >= std::cos(5.0 * kPi / 180.0)) ++up;
    }
  }
  ASSERT_GT(ground, dims.width * (dims.height / 2 - 2));
  EXPECT_GE(double(up), 0.99 * ground);
}

TEST(SurfaceNormals, FrontalWallIsHorizontalFacingCamera) {
  const ImageDims dims{40, 30};
  const auto cam = CameraModel::centered(dims, 20.0, 0.5);
  DepthImage depth(dims, 3.0f);
  const auto normals = surface_normals(depth, cam);
  int checked = 0;
  for (int r = 1; r < dims.height; ++r) {
    for (int c = 1; c < dims.width; ++c) {
      const Vec3 v = normals.at(r, c);
      ASSERT_TRUE(v.is_finite());
      EXPECT_GE(-v.x, std::cos(5.0 * kPi / 180.0));  // facing back along the optical axis
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(SurfaceNormals, NoReturnGivesUndefined) {
  const ImageDims dims{4, 4};
  DepthImage depth(dims, 2.0f);
  depth.at(2, 2) = kNoReturn;
  const auto n = surface_normals(depth, CameraModel::centered(dims, 4.0, 0.5));
  EXPECT_FALSE(n.at(2, 2).is_finite());
  EXPECT_FALSE(n.at(0, 0).is_finite());  // no upper/left neighbours
}

TEST(SurfaceNormals, OnePixelImageIsDomainError) {
  DepthImage depth({1, 1}, 1.0f);
  EXPECT_THROW((void)surface_normals(depth, CameraModel{}), DomainError);
}

TEST(Postprocess, EnclosedIslandIsRemoved) {
  NavigabilityImage nav({7, 7}, kBlocked);
  for (int r = 2; r < 5; ++r) {
    for (int c = 2; c < 5; ++c) nav.at(r, c) = kNavigable;
  }
  const auto out = postprocess_navigability(nav);
  for (auto v : out.cells()) EXPECT_EQ(v, kBlocked);
}

TEST(Postprocess, AllNavigableUnchangedAndCorridorKept) {
  NavigabilityImage all({9, 7}, kNavigable);
  EXPECT_EQ(postprocess_navigability(all), all);

  NavigabilityImage corridor({9, 7}, kBlocked);
  for (int r = 0; r < 7; ++r) corridor.at(r, 4) = kNavigable;
  EXPECT_EQ(postprocess_navigability(corridor), corridor);
}

TEST(Postprocess, MatchesFloodFillOracleAndIsIdempotent) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto nav = oracle::random_navigability(rng, {48, 36}, 1.5, 0.1);
    const auto once = postprocess_navigability(nav);
    EXPECT_EQ(once, oracle::reachable(nav));
    EXPECT_EQ(postprocess_navigability(once), once);
  }
}

TEST(Noise, DisabledByDefaultAndDeterministic) {
  SegmentationNoise none;
  EXPECT_FALSE(none.enabled());
  SegmentationNoise noisy{0.1, 2};
  NavigabilityImage nav({20, 20}, kNavigable);
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  EXPECT_EQ(noisy.apply(nav, a), noisy.apply(nav, b));
}
