#pragma once

// Horizon optic goal (HOG) selection by weighted-sum scalarization of the
// navigation cost (angular deviation from the goal bearing, normalized by pi)
// and the exploration cost (negative distance from the start pixel,
// normalized by the image diagonal).

#include <cmath>
#include <limits>

#include "povnav/core.hpp"
#include "povnav/horizon.hpp"

namespace povnav {

struct ObjectiveWeights {
  double w1 = 0.7;  // navigation
  double w2 = 0.3;  // exploration

  void validate() const {
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw DomainError("objective weights must be positive");
  }
};

struct ObjectiveValues {
  double nav = 0.0;
  double exp = 0.0;
};

struct Hog {
  PixelCoord pixel;
  double cost = 0.0;
  ObjectiveValues objectives;
};

/// Distance from the start pixel to the farthest image corner.
[[nodiscard]] inline double image_diagonal(ImageDims dims) {
  return std::hypot(double(dims.width - 1), double(dims.height - 1));
}

/// The origin is assigned zero cost in both objectives.
[[nodiscard]] inline ObjectiveValues objective_values(PlanarPoint p, double theta_g, ImageDims dims) {
  if (p.x == 0 && p.y == 0) return {};
  const double bearing = std::atan2(double(p.y), double(p.x));
  return {std::abs(wrap_angle(bearing - theta_g)) / kPi, -p.norm() / image_diagonal(dims)};
}

[[nodiscard]] inline double scalarize(ObjectiveValues v, const ObjectiveWeights& w) {
  return w.w1 * v.nav + w.w2 * v.exp;
}

[[nodiscard]] inline double scalarized_cost(PlanarPoint p, double theta_g, const ObjectiveWeights& w,
                                            ImageDims dims) {
  return scalarize(objective_values(p, theta_g, dims), w);
}

/// Strict ordering used by every HOG search: lower cost, then lower
/// navigation cost, then smaller column, then smaller row.
[[nodiscard]] inline bool hog_better(double cost, ObjectiveValues v, PixelCoord p, const Hog& best) {
  if (cost != best.cost) return cost < best.cost;
  if (v.nav != best.objectives.nav) return v.nav < best.objectives.nav;
  if (p.col != best.pixel.col) return p.col < best.pixel.col;
  return p.row < best.pixel.row;
}

/// Enumerates the horizon pixel set; O(|horizon|) = O(W + H).
[[nodiscard]] inline Hog select_hog(const VisualHorizon& horizon, double theta_g,
                                    const ObjectiveWeights& weights) {
  if (horizon.empty()) throw ContractViolation("select_hog: empty horizon");
  weights.validate();
  Hog best{{}, std::numeric_limits<double>::infinity(), {}};
  for (const PixelCoord& p : horizon.pixels) {
    const ObjectiveValues v = objective_values(to_planning(p, horizon.dims), theta_g, horizon.dims);
    const double cost = scalarize(v, weights);
    if (hog_better(cost, v, p, best)) best = {p, cost, v};
  }
  return best;
}

}  // namespace povnav
