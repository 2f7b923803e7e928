#pragma once

// Navigability image construction: class-table lookup for semantic images,
// surface-normal thresholding for depth images, and the reachability
// post-process shared by both.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "povnav/camera.hpp"
#include "povnav/core.hpp"

namespace povnav {

using SemanticImage = Grid<std::uint8_t>;

/// Forward (optical-axis) depth in meters; kNoReturn marks pixels without a return.
using DepthImage = Grid<float>;
inline constexpr float kNoReturn = 0.0f;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  [[nodiscard]] double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  [[nodiscard]] Vec3 cross(Vec3 o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
  [[nodiscard]] bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

/// Unit normals in the robot/world frame (z up). Undefined pixels hold NaN.
using NormalImage = Grid<Vec3>;

[[nodiscard]] inline Vec3 undefined_normal() {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan, nan};
}

// Class ids produced by the simulator's renderer.
namespace classes {
inline constexpr std::uint8_t kSky = 0;
inline constexpr std::uint8_t kGrass = 1;
inline constexpr std::uint8_t kTrail = 2;
inline constexpr std::uint8_t kAsphalt = 3;
inline constexpr std::uint8_t kFloor = 4;
inline constexpr std::uint8_t kTree = 5;
inline constexpr std::uint8_t kBuilding = 6;
inline constexpr std::uint8_t kObstacle = 7;
inline constexpr std::uint8_t kWall = 8;
inline constexpr std::uint8_t kPerson = 9;
inline constexpr int kCount = 10;
// Pixels the sensor cannot label (beyond range); not in any table.
inline constexpr std::uint8_t kUnlabeled = 255;
}  // namespace classes

enum class Navigability : std::uint8_t { kNavigable = 0, kNonNavigable = 1 };

/// The navigability function: class id -> navigable / non-navigable.
class NavigabilityTable {
 public:
  explicit NavigabilityTable(Navigability fallback = Navigability::kNonNavigable)
      : fallback_(fallback) {
    lut_.fill(static_cast<std::uint8_t>(fallback));
  }

  /// Ground classes navigable; sky, vegetation, structures and people not.
  [[nodiscard]] static NavigabilityTable standard() {
    NavigabilityTable t;
    for (auto c : {classes::kGrass, classes::kTrail, classes::kAsphalt, classes::kFloor}) {
      t.set(c, Navigability::kNavigable);
    }
    for (auto c : {classes::kSky, classes::kTree, classes::kBuilding, classes::kObstacle,
                   classes::kWall, classes::kPerson}) {
      t.set(c, Navigability::kNonNavigable);
    }
    return t;
  }

  void set(std::uint8_t class_id, Navigability n) {
    lut_[class_id] = static_cast<std::uint8_t>(n);
    if (class_id >= declared_) declared_ = class_id + 1;
  }

  [[nodiscard]] Navigability lookup(std::uint8_t class_id) const {
    return static_cast<Navigability>(lut_[class_id]);
  }
  [[nodiscard]] std::uint8_t cell(std::uint8_t class_id) const { return lut_[class_id]; }
  [[nodiscard]] Navigability fallback() const { return fallback_; }
  [[nodiscard]] int declared_classes() const { return declared_; }

 private:
  std::array<std::uint8_t, 256> lut_{};
  Navigability fallback_;
  int declared_ = 0;
};

[[nodiscard]] inline NavigabilityImage classes_to_navigability(const SemanticImage& seg,
                                                               const NavigabilityTable& table) {
  NavigabilityImage nav(seg.dims(), kBlocked);
  const auto& in = seg.cells();
  auto& out = nav.cells();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = table.cell(in[i]);
  return nav;
}

/// Normals from the cross product of the differences to the upper and left
/// neighbours, each pixel back-projected through the pinhole model. The
/// result is oriented towards the camera.
[[nodiscard]] inline NormalImage surface_normals(const DepthImage& depth, const CameraModel& camera) {
  const ImageDims dims = depth.dims();
  if (!dims.valid()) throw DomainError("surface_normals: image must be at least 2x2");
  camera.validate();

  auto valid = [](float d) { return std::isfinite(d) && d > 0.0f; };
  auto point = [&](int r, int c) {
    const auto p = back_project(camera, r, c, depth.at(r, c));
    return Vec3{p.x, p.y, p.z};
  };
  const Vec3 eye{0.0, 0.0, camera.height_m};

  NormalImage normals(dims, undefined_normal());
  for (int r = 1; r < dims.height; ++r) {
    for (int c = 1; c < dims.width; ++c) {
      if (!valid(depth.at(r, c)) || !valid(depth.at(r - 1, c)) || !valid(depth.at(r, c - 1))) {
        continue;
      }
      const Vec3 p = point(r, c);
      Vec3 n = (p - point(r - 1, c)).cross(p - point(r, c - 1));
      const double len = n.norm();
      if (!(len > 0.0)) continue;
      n = {n.x / len, n.y / len, n.z / len};
      if (n.dot(eye - p) < 0.0) n = {-n.x, -n.y, -n.z};
      normals.at(r, c) = n;
    }
  }
  return normals;
}

/// A pixel is navigable when its normal is within `up_tolerance_deg` of world up.
[[nodiscard]] inline NavigabilityImage normals_to_navigability(const NormalImage& normals,
                                                               double up_tolerance_deg = 20.0) {
  if (!(up_tolerance_deg > 0.0 && up_tolerance_deg < 90.0)) {
    throw DomainError("normals_to_navigability: tolerance must lie in (0, 90) degrees");
  }
  const double cos_tol = std::cos(up_tolerance_deg * kPi / 180.0);
  NavigabilityImage nav(normals.dims(), kBlocked);
  const auto& in = normals.cells();
  auto& out = nav.cells();
  for (std::size_t i = 0; i < in.size(); ++i) {
    // NaN compares false, so undefined normals stay blocked.
    if (in[i].z >= cos_tol) out[i] = kNavigable;
  }
  return nav;
}

/// Reclassifies navigable 4-connected regions that do not reach the bottom
/// row (unreachable islands) as non-navigable.
[[nodiscard]] inline NavigabilityImage postprocess_navigability(const NavigabilityImage& nav) {
  const ImageDims dims = nav.dims();
  NavigabilityImage out(dims, kBlocked);
  if (dims.area() == 0) return out;
  std::vector<PixelCoord> stack;
  stack.reserve(dims.area() / 4);
  const int bottom = dims.height - 1;
  for (int c = 0; c < dims.width; ++c) {
    if (nav.at(bottom, c) == kNavigable) {
      out.at(bottom, c) = kNavigable;
      stack.push_back({bottom, c});
    }
  }
  auto visit = [&](int r, int c) {
    if (r < 0 || r >= dims.height || c < 0 || c >= dims.width) return;
    if (nav.at(r, c) != kNavigable || out.at(r, c) == kNavigable) return;
    out.at(r, c) = kNavigable;
    stack.push_back({r, c});
  };
  while (!stack.empty()) {
    const PixelCoord p = stack.back();
    stack.pop_back();
    visit(p.row - 1, p.col);
    visit(p.row + 1, p.col);
    visit(p.row, p.col - 1);
    visit(p.row, p.col + 1);
  }
  return out;
}

/// Synthetic segmentation noise for robustness experiments: independent
/// per-pixel flips plus a random vertical shift of each column.
struct SegmentationNoise {
  double flip_probability = 0.0;
  int boundary_jitter_rows = 0;

  [[nodiscard]] bool enabled() const { return flip_probability > 0.0 || boundary_jitter_rows > 0; }

  template <typename Rng>
  [[nodiscard]] NavigabilityImage apply(const NavigabilityImage& nav, Rng& rng) const {
    const ImageDims dims = nav.dims();
    NavigabilityImage out = nav;
    if (boundary_jitter_rows > 0) {
      std::uniform_int_distribution<int> shift(-boundary_jitter_rows, boundary_jitter_rows);
      for (int c = 0; c < dims.width; ++c) {
        const int s = shift(rng);
        for (int r = 0; r < dims.height; ++r) {
          const int src = std::clamp(r + s, 0, dims.height - 1);
          out.at(r, c) = nav.at(src, c);
        }
      }
    }
    if (flip_probability > 0.0) {
      std::bernoulli_distribution flip(flip_probability);
      for (auto& v : out.cells()) {
        if (flip(rng)) v = v == kNavigable ? kBlocked : kNavigable;
      }
    }
    return out;
  }
};

}  // namespace povnav
