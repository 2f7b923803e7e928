#pragma once

// Visual path generation from the HOG back to the start pixel.
//
// Rows are walked from just below the HOG towards the robot. The column is
// carried from row to row and drifts linearly towards the start column, so in
// free space the path is the straight segment HOG -> start and after a shift
// it heads straight from the shifted point to the start. The safety span
// [col - d, col + d], d = projected robot half-width plus margin at that row,
// must be navigable in the processed navigability image. At the first blocked
// row a shift direction is chosen once (the side needing the smaller shift);
// later blocked rows shift only that way. A row that cannot be cleared is
// skipped and the path is marked fallback. A HOG on the start row gives the
// two-point segment start -> HOG.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "povnav/camera.hpp"
#include "povnav/core.hpp"
#include "povnav/subgoal.hpp"

namespace povnav {

struct RobotFootprint {
  double half_width_m = 0.25;
  double safety_margin_m = 0.05;

  void validate() const {
    if (!(half_width_m > 0.0) || !(safety_margin_m > 0.0)) {
      throw DomainError("robot footprint: half width and margin must be positive");
    }
  }
};

enum class PathMode { kSafe, kFallback };

/// Ordered start -> HOG. Consecutive points are one row apart, except that a
/// HOG on the bottom row follows the start pixel directly. Fallback paths may
/// skip rows.
struct VisualPath {
  std::vector<PixelCoord> points;
  PathMode mode = PathMode::kSafe;
};

/// Bookkeeping exposed for tests and diagnostics.
struct PathStats {
  std::optional<int> first_blocked_row;
  bool first_blocked_cleared = false;
  int skipped_rows = 0;
  int later_uncleared_rows = 0;  // blocked rows after a direction was fixed that could not clear
  long cell_touches = 0;
};

/// Half-width of the robot plus margin, in pixels, for the ground seen at `row`.
[[nodiscard]] inline int safe_halfwidth(int row, const CameraModel& camera, const RobotFootprint& robot,
                                        ImageDims dims) {
  if (row < 0 || row >= dims.height) throw DomainError("safe_halfwidth: row outside image");
  const int max_half = std::max(1, dims.width / 2);
  const double dr = row - camera.principal_row;
  if (dr <= 0.0) return 1;
  const double px = (robot.half_width_m + robot.safety_margin_m) * dr / camera.height_m;
  return std::clamp(static_cast<int>(std::lround(px)), 1, max_half);
}

namespace detail {

/// Per-row prefix counts of blocked cells, so span tests are O(1).
class RowBlockIndex {
 public:
  RowBlockIndex(const NavigabilityImage& nav, int row, long& touches) : prefix_(std::size_t(nav.width()) + 1, 0) {
    const std::uint8_t* data = nav.row_data(row);
    for (int c = 0; c < nav.width(); ++c) prefix_[std::size_t(c) + 1] = prefix_[std::size_t(c)] + (data[c] != kNavigable);
    touches += nav.width();
  }

  /// True when [center - half, center + half], clipped to the image, is navigable.
  [[nodiscard]] bool clear(int center, int half) const {
    const int w = int(prefix_.size()) - 1;
    const int lo = std::max(0, center - half);
    const int hi = std::min(w - 1, center + half);
    if (lo > hi) return true;
    return prefix_[std::size_t(hi) + 1] - prefix_[std::size_t(lo)] == 0;
  }

 private:
  std::vector<int> prefix_;
};

/// Smallest shift (in columns) in direction `step` that clears the span, or
/// nullopt when the border is reached first.
inline std::optional<int> clearing_shift(const RowBlockIndex& idx, int center, int half, int step, int width,
                                         long& touches) {
  for (int k = 1;; ++k) {
    const int c = center + step * k;
    if (c < 0 || c >= width) return std::nullopt;
    ++touches;
    if (idx.clear(c, half)) return k;
  }
}

}  // namespace detail

[[nodiscard]] inline VisualPath generate_path(const NavigabilityImage& processed, const Hog& hog,
                                              const CameraModel& camera, const RobotFootprint& robot,
                                              PathStats* stats = nullptr) {
  const ImageDims dims = processed.dims();
  if (!dims.valid()) throw DomainError("generate_path: image must be at least 2x2");
  if (!in_bounds(hog.pixel, dims)) throw ContractViolation("generate_path: HOG outside the image");
  // On or below the horizon: nothing navigable lies beneath the HOG in its column.
  for (int r = hog.pixel.row + 1; r < dims.height; ++r) {
    if (processed.at(r, hog.pixel.col) != kNavigable) {
      throw ContractViolation("generate_path: HOG lies above the visual horizon");
    }
  }

  PathStats local;
  PathStats& st = stats ? *stats : local;
  st = {};

  const PixelCoord start = start_pixel(dims);
  VisualPath path;
  std::vector<PixelCoord> reversed;
  reversed.reserve(std::size_t(dims.height - hog.pixel.row + 1));
  reversed.push_back(hog.pixel);
  if (hog.pixel == start) {
    path.points = {start};
    return path;
  }

  const int last_row = dims.height - 1;
  int direction = 0;  // +1 towards larger columns (robot's right), -1 towards the left
  double x = hog.pixel.col;
  for (int r = hog.pixel.row + 1; r < last_row; ++r) {
    x += (start.col - x) / double(last_row - r + 1);
    const int nominal = static_cast<int>(std::lround(x));
    const int half = safe_halfwidth(r, camera, robot, dims);
    const detail::RowBlockIndex idx(processed, r, st.cell_touches);
    if (idx.clear(nominal, half)) {
      reversed.push_back({r, nominal});
      continue;
    }

    const bool first = !st.first_blocked_row.has_value();
    if (first) st.first_blocked_row = r;
    if (direction == 0) {
      const auto right = detail::clearing_shift(idx, nominal, half, +1, dims.width, st.cell_touches);
      const auto left = detail::clearing_shift(idx, nominal, half, -1, dims.width, st.cell_touches);
      if (!left && !right) {
        path.mode = PathMode::kFallback;
        ++st.skipped_rows;
        continue;
      }
      if (first) st.first_blocked_cleared = true;
      if (left && right) {
        // Equal shifts go towards the start column.
        if (*left != *right) direction = *left < *right ? -1 : +1;
        else direction = nominal > start.col ? -1 : +1;
      } else {
        direction = left ? -1 : +1;
      }
      const int k = direction < 0 ? *left : *right;
      x = nominal + direction * k;
      reversed.push_back({r, int(x)});
      continue;
    }

    const auto k = detail::clearing_shift(idx, nominal, half, direction, dims.width, st.cell_touches);
    if (!k) {
      path.mode = PathMode::kFallback;
      ++st.skipped_rows;
      ++st.later_uncleared_rows;
      continue;
    }
    x = nominal + direction * *k;
    reversed.push_back({r, int(x)});
  }
  reversed.push_back(start);

  path.points.assign(reversed.rbegin(), reversed.rend());
  return path;
}

}  // namespace povnav
