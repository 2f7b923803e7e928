#pragma once

// Visual horizon extraction.
//
// For each column the boundary h[c] is the lowest non-navigable row such that
// every row beneath it is navigable; a fully navigable column has its boundary
// on the top row and a column whose bottom pixel is blocked has h[c] = H-1.
// The pixel set is the boundary itself, vertical bridges that keep it
// 8-connected where neighbouring heights jump by more than one row, and the
// left/right border columns beneath their boundary.

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <vector>

#include "povnav/core.hpp"

namespace povnav {

struct VisualHorizon {
  ImageDims dims{};
  std::vector<int> heights;        // h[c], one per column
  std::vector<PixelCoord> pixels;  // ordered left border -> boundary -> right border

  [[nodiscard]] bool empty() const { return pixels.empty(); }

  /// True when `p` lies on or below the boundary of its column.
  [[nodiscard]] bool admits(PixelCoord p) const {
    return in_bounds(p, dims) && p.row >= heights[std::size_t(p.col)];
  }
};

struct HorizonResult {
  VisualHorizon horizon;
  NavigabilityImage processed;  // rows <= h[c] blocked, rows > h[c] navigable
};

/// Boundary height of every column from a single bottom-up scan.
[[nodiscard]] inline std::vector<int> horizon_heights(const NavigabilityImage& nav) {
  const ImageDims dims = nav.dims();
  std::vector<int> heights(std::size_t(dims.width), 0);
  std::vector<char> open(std::size_t(dims.width), 1);
  int still_open = dims.width;
  // Row-major sweep from the bottom keeps the access pattern cache friendly.
  for (int r = dims.height - 1; r >= 0 && still_open > 0; --r) {
    const std::uint8_t* row = nav.row_data(r);
    for (int c = 0; c < dims.width; ++c) {
      if (open[std::size_t(c)] && row[c] != kNavigable) {
        open[std::size_t(c)] = 0;
        heights[std::size_t(c)] = r;
        --still_open;
      }
    }
  }
  return heights;
}

/// Builds the horizon pixel set and processed image from per-column heights.
[[nodiscard]] inline HorizonResult horizon_from_heights(std::vector<int> heights, ImageDims dims) {
  if (!dims.valid()) throw DomainError("horizon: image must be at least 2x2");
  if (heights.size() != std::size_t(dims.width)) throw DomainError("horizon: one height per column required");
  for (int& h : heights) h = std::clamp(h, 0, dims.height - 1);

  HorizonResult out;
  out.horizon.dims = dims;
  out.processed = NavigabilityImage(dims, kNavigable);
  for (int r = 0; r < dims.height; ++r) {
    std::uint8_t* row = out.processed.row_data(r);
    for (int c = 0; c < dims.width; ++c) row[c] = r <= heights[std::size_t(c)] ? kBlocked : kNavigable;
  }

  auto& px = out.horizon.pixels;
  const int W = dims.width;
  const int H = dims.height;
  px.reserve(std::size_t(W + 2 * H));
  // Left border, bottom up (the boundary pixel is added by the loop below).
  for (int r = H - 1; r > heights[0]; --r) px.push_back({r, 0});
  int bridged_to = -1;  // lowest row of an up-bridge already placed in column c
  for (int c = 0; c < W; ++c) {
    const int h = heights[std::size_t(c)];
    px.push_back({h, c});
    if (c + 1 == W) break;
    const int hn = heights[std::size_t(c + 1)];
    const int covered = bridged_to;
    bridged_to = -1;
    if (hn - h > 1 && c > 0) {
      // Next column's boundary is lower: bridge down this column (column 0
      // is already covered by the left border).
      for (int r = std::max(h, covered) + 1; r < hn; ++r) px.push_back({r, c});
    } else if (h - hn > 1 && c + 1 < W - 1) {
      // Next column's boundary is higher: bridge up the next column.
      for (int r = h - 1; r > hn; --r) px.push_back({r, c + 1});
      bridged_to = h - 1;
    }
  }
  for (int r = heights[std::size_t(W - 1)] + 1; r < H; ++r) px.push_back({r, W - 1});

  out.horizon.heights = std::move(heights);
  return out;
}

[[nodiscard]] inline HorizonResult extract_horizon(const NavigabilityImage& nav) {
  return horizon_from_heights(horizon_heights(nav), nav.dims());
}

/// Optional temporal smoothing: each column's boundary may move at most the
/// running mean of recent per-column movements (never less than one row).
class HorizonFilter {
 public:
  explicit HorizonFilter(std::size_t window = 10) : window_(std::max<std::size_t>(1, window)) {}

  void reset() {
    previous_.clear();
    recent_.clear();
  }

  [[nodiscard]] std::vector<int> apply(const std::vector<int>& heights) {
    if (previous_.size() != heights.size()) {
      previous_ = heights;
      recent_.clear();
      return heights;
    }
    double mean_move = 1.0;
    if (!recent_.empty()) {
      double sum = 0.0;
      for (double m : recent_) sum += m;
      mean_move = std::max(1.0, sum / double(recent_.size()));
    }
    const int cap = static_cast<int>(std::ceil(mean_move));
    std::vector<int> out(heights.size());
    double moved = 0.0;
    for (std::size_t c = 0; c < heights.size(); ++c) {
      const int delta = std::clamp(heights[c] - previous_[c], -cap, cap);
      out[c] = previous_[c] + delta;
      moved += std::abs(heights[c] - previous_[c]);
    }
    recent_.push_back(moved / double(heights.size()));
    if (recent_.size() > window_) recent_.pop_front();
    previous_ = out;
    return out;
  }

 private:
  std::size_t window_;
  std::vector<int> previous_;
  std::deque<double> recent_;
};

}  // namespace povnav
