#pragma once

// Peripheral optic goal: the goal bearing mapped onto the image border.
//
// Forward bearings in [-pi/2, pi/2] are ray-cast from the bottom-center
// origin to the right, top or left border. Backward bearings are cast into
// the mirror image of those borders below the bottom edge; the virtual hit
// is then dropped onto the bottom row, so every bearing that leaves through
// a mirrored side border lands on the matching bottom corner.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "povnav/camera.hpp"
#include "povnav/core.hpp"

namespace povnav {

/// Relative goal bearing in [-pi, pi): 0 straight ahead, positive left.
struct GoalDirection {
  double theta = 0.0;
};

struct Pog {
  PixelCoord pixel;
};

/// Bias applied to a goal exactly behind the robot so that start, HOG and POG
/// do not collapse onto one pixel.
inline constexpr double kBackwardGoalBias = 0.01;

[[nodiscard]] inline GoalDirection relative_goal_angle(const Pose2D& robot, const Point2D& goal) {
  if (!std::isfinite(robot.x) || !std::isfinite(robot.y) || !std::isfinite(robot.theta) ||
      !std::isfinite(goal.x) || !std::isfinite(goal.y)) {
    throw DomainError("relative_goal_angle: non-finite input");
  }
  const double dx = goal.x - robot.x;
  const double dy = goal.y - robot.y;
  if (dx == 0.0 && dy == 0.0) throw DomainError("relative_goal_angle: goal coincides with robot");
  return {wrap_angle(std::atan2(dy, dx) - robot.theta)};
}

namespace detail {

/// Exit point of the ray (cos a, sin a) from the origin through the box
/// |x| <= x_extent, y_right <= y <= y_left.
inline std::pair<double, double> ray_exit(double a, double x_extent, double y_left, double y_right) {
  const double cx = std::cos(a);
  const double sy = std::sin(a);
  constexpr double inf = std::numeric_limits<double>::infinity();
  double t = inf;
  if (std::abs(cx) > 1e-12) t = std::min(t, x_extent / std::abs(cx));
  if (sy > 1e-12) t = std::min(t, y_left / sy);
  if (sy < -1e-12) t = std::min(t, y_right / sy);
  return {t * cx, t * sy};
}

}  // namespace detail

[[nodiscard]] inline Pog project_goal(GoalDirection dir, ImageDims dims) {
  if (!dims.valid()) throw DomainError("project_goal: image must be at least 2x2");
  double theta = wrap_angle(dir.theta);
  if (theta == -kPi) theta = wrap_angle(kPi + kBackwardGoalBias);

  const double top = dims.height - 1;
  const double y_left = dims.origin_col();
  const double y_right = dims.origin_col() - (dims.width - 1);
  const auto [x, y] = detail::ray_exit(theta, top, y_left, y_right);

  const int col = std::clamp(dims.origin_col() - static_cast<int>(std::lround(y)), 0, dims.width - 1);
  if (std::abs(theta) <= kPi / 2) {
    const int row = std::clamp((dims.height - 1) - static_cast<int>(std::lround(x)), 0, dims.height - 1);
    // Snap onto the border the ray actually left through.
    PixelCoord p{row, col};
    const double eps = 1e-9;
    if (std::abs(x - top) < eps) p.row = 0;
    else if (std::abs(y - y_left) < eps) p.col = 0;
    else if (std::abs(y - y_right) < eps) p.col = dims.width - 1;
    return {p};
  }
  return {{dims.height - 1, col}};
}

/// Pixel of a goal on the ground plane when it is visible below the camera's
/// horizon row; nullopt otherwise.
[[nodiscard]] inline std::optional<PixelCoord> project_ground_goal(const Pose2D& robot,
                                                                   const Point2D& goal,
                                                                   const CameraModel& camera,
                                                                   ImageDims dims) {
  const double dx = goal.x - robot.x;
  const double dy = goal.y - robot.y;
  const double c = std::cos(robot.theta);
  const double s = std::sin(robot.theta);
  const RobotFramePoint local{c * dx + s * dy, -s * dx + c * dy, 0.0};
  const auto ip = project(camera, local);
  if (!ip || ip->row <= camera.principal_row) return std::nullopt;
  const PixelCoord p{static_cast<int>(std::lround(ip->row)), static_cast<int>(std::lround(ip->col))};
  if (!in_bounds(p, dims)) return std::nullopt;
  return p;
}

/// Goal bearing used by the navigation objective, recomputed from the POG
/// pixel; falls back to `dir` when the POG coincides with the start pixel.
[[nodiscard]] inline double pog_bearing(const Pog& pog, GoalDirection dir, ImageDims dims) {
  const PlanarPoint p = to_planning(pog.pixel, dims);
  if (p.x == 0 && p.y == 0) {
    double theta = wrap_angle(dir.theta);
    if (theta == -kPi) theta = wrap_angle(kPi + kBackwardGoalBias);
    return std::clamp(theta, -kPi / 2, kPi / 2);
  }
  return pixel_angle(p);
}

}  // namespace povnav
