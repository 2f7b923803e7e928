#pragma once

// Brute-force reference implementations and random inputs shared by the unit
// tests and the acceptance checks. Deliberately naive: every oracle works from
// the raw definitions, never from the optimized production code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "povnav/povnav.hpp"

namespace oracle {

using namespace povnav;

/// Navigable background with random rectangles and discs, optionally salted
/// with per-pixel noise. `density` scales the number of blobs.
inline NavigabilityImage random_navigability(std::mt19937_64& rng, ImageDims dims, double density = 1.0,
                                             double noise = 0.0) {
  NavigabilityImage nav(dims, kNavigable);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int blobs = static_cast<int>(std::lround(density * (1 + 6 * u(rng))));
  for (int b = 0; b < blobs; ++b) {
    const int r0 = static_cast<int>(u(rng) * dims.height);
    const int c0 = static_cast<int>(u(rng) * dims.width);
    const int rh = 1 + static_cast<int>(u(rng) * dims.height * 0.4);
    const int cw = 1 + static_cast<int>(u(rng) * dims.width * 0.3);
    const bool disc = u(rng) < 0.5;
    for (int r = std::max(0, r0 - rh); r < std::min(dims.height, r0 + rh); ++r) {
      for (int c = std::max(0, c0 - cw); c < std::min(dims.width, c0 + cw); ++c) {
        const double dr = double(r - r0) / rh;
        const double dc = double(c - c0) / cw;
        if (!disc || dr * dr + dc * dc <= 1.0) nav.at(r, c) = kBlocked;
      }
    }
  }
  if (noise > 0.0) {
    for (auto& v : nav.cells()) {
      if (u(rng) < noise) v = kBlocked;
    }
  }
  return nav;
}

/// Column scan from the bottom: the first blocked row, or 0 when none.
inline std::vector<int> heights(const NavigabilityImage& nav) {
  std::vector<int> h(std::size_t(nav.width()), 0);
  for (int c = 0; c < nav.width(); ++c) {
    for (int r = nav.height() - 1; r >= 0; --r) {
      if (nav.at(r, c) != kNavigable) {
        h[std::size_t(c)] = r;
        break;
      }
    }
  }
  return h;
}

/// 4-connected flood fill from the navigable bottom-row pixels.
inline NavigabilityImage reachable(const NavigabilityImage& nav) {
  NavigabilityImage out(nav.dims(), kBlocked);
  std::vector<PixelCoord> stack;
  for (int c = 0; c < nav.width(); ++c) {
    if (nav.at(nav.height() - 1, c) == kNavigable) stack.push_back({nav.height() - 1, c});
  }
  while (!stack.empty()) {
    const PixelCoord p = stack.back();
    stack.pop_back();
    if (!in_bounds(p, nav.dims()) || nav[p] != kNavigable || out[p] == kNavigable) continue;
    out[p] = kNavigable;
    stack.push_back({p.row + 1, p.col});
    stack.push_back({p.row - 1, p.col});
    stack.push_back({p.row, p.col + 1});
    stack.push_back({p.row, p.col - 1});
  }
  return out;
}

/// Scalarized cost straight from the definitions.
inline double cost(PixelCoord px, double theta_g, double w1, double w2, ImageDims dims) {
  const double x = (dims.height - 1) - px.row;
  const double y = (dims.width / 2) - px.col;
  if (x == 0 && y == 0) return 0.0;
  double d = std::atan2(y, x) - theta_g;
  while (d > kPi) d -= 2 * kPi;
  while (d < -kPi) d += 2 * kPi;
  const double diag = std::sqrt(double(dims.width - 1) * (dims.width - 1) + double(dims.height - 1) * (dims.height - 1));
  return w1 * std::abs(d) / kPi - w2 * std::hypot(x, y) / diag;
}

struct Objectives {
  double nav;
  double exp;
};

inline Objectives objectives(PixelCoord px, double theta_g, ImageDims dims) {
  const double x = (dims.height - 1) - px.row;
  const double y = (dims.width / 2) - px.col;
  if (x == 0 && y == 0) return {0.0, 0.0};
  double d = std::atan2(y, x) - theta_g;
  while (d > kPi) d -= 2 * kPi;
  while (d < -kPi) d += 2 * kPi;
  const double diag = std::hypot(double(dims.width - 1), double(dims.height - 1));
  return {std::abs(d) / kPi, -std::hypot(x, y) / diag};
}

/// The full search space: every pixel on or below the boundary of its column.
inline std::vector<PixelCoord> search_space(const std::vector<int>& h, ImageDims dims) {
  std::vector<PixelCoord> g;
  for (int c = 0; c < dims.width; ++c) {
    for (int r = h[std::size_t(c)]; r < dims.height; ++r) g.push_back({r, c});
  }
  return g;
}

/// Exhaustive argmin over a pixel set; ties within 1e-12 go to the smaller
/// navigation cost, then column, then row.
inline PixelCoord argmin(const std::vector<PixelCoord>& set, double theta_g, double w1, double w2, ImageDims dims) {
  PixelCoord best{};
  double best_cost = std::numeric_limits<double>::infinity();
  double best_nav = std::numeric_limits<double>::infinity();
  for (const auto& p : set) {
    const Objectives o = objectives(p, theta_g, dims);
    const double c = w1 * o.nav + w2 * o.exp;
    bool better = c < best_cost - 1e-12;
    if (!better && std::abs(c - best_cost) <= 1e-12) {
      better = o.nav != best_nav ? o.nav < best_nav : p.col != best.col ? p.col < best.col : p.row < best.row;
    }
    if (better) {
      best = p;
      best_cost = c;
      best_nav = o.nav;
    }
  }
  return best;
}

/// True when every pixel of [col - half, col + half] (clipped) is navigable.
inline bool span_clear(const NavigabilityImage& nav, int row, int col, int half) {
  for (int c = std::max(0, col - half); c <= std::min(nav.width() - 1, col + half); ++c) {
    if (nav.at(row, c) != kNavigable) return false;
  }
  return true;
}

/// Whether some shift in either direction clears the span at `row` around `col`.
inline bool any_clearing_shift(const NavigabilityImage& nav, int row, int col, int half) {
  for (int c = 0; c < nav.width(); ++c) {
    if (c != col && span_clear(nav, row, c, half)) return true;
  }
  return false;
}

/// Nominal path column at `row` for a path from the HOG to the start pixel.
inline int nominal_column(PixelCoord hog, int row, ImageDims dims) {
  const int last = dims.height - 1;
  const double t = double(row - hog.row) / double(last - hog.row);
  return static_cast<int>(std::lround(hog.col + (dims.width / 2 - hog.col) * t));
}

inline bool on_border(PixelCoord p, ImageDims d) {
  return in_bounds(p, d) && (p.row == 0 || p.row == d.height - 1 || p.col == 0 || p.col == d.width - 1);
}

/// Backward goal (|theta| > pi/2): the mirrored ray either leaves through a
/// reflected side border (corner pixel) or through the reflected top border.
inline PixelCoord backward_pog(double theta, ImageDims dims) {
  const double top = dims.height - 1;
  const double y_left = dims.width / 2;
  const double y_right = y_left - (dims.width - 1);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double t_top = top / std::abs(c);
  const double t_side = s > 0 ? y_left / s : s < 0 ? y_right / s : std::numeric_limits<double>::infinity();
  if (t_side <= t_top) return {dims.height - 1, s > 0 ? 0 : dims.width - 1};
  const double y_v = s * t_top;
  const int col = dims.width / 2 - static_cast<int>(std::lround(y_v));
  return {dims.height - 1, std::clamp(col, 0, dims.width - 1)};
}

}  // namespace oracle
