#pragma once

// 2.5D simulated world: flat ground split into classed regions, vertical
// extruded obstacles (cylinders and axis-aligned boxes), and disc-shaped
// pedestrians. The robot is a unicycle carrying a forward pinhole camera.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "povnav/camera.hpp"
#include "povnav/core.hpp"
#include "povnav/segmentation.hpp"
#include "povnav/servo.hpp"

namespace povnav::sim {

struct GroundRegion {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  std::uint8_t class_id = classes::kGrass;

  [[nodiscard]] bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
};

struct Cylinder {
  Point2D center;
  double radius = 0.2;
  double height_m = 1.0;
  std::uint8_t class_id = classes::kObstacle;
};

struct Box {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  double height_m = 2.0;
  std::uint8_t class_id = classes::kWall;
};

struct Pedestrian {
  Point2D position;
  Point2D velocity;
  Point2D goal;
  double v_des = 1.2;
  double radius = 0.25;
  double height_m = 1.7;
  // When set, the agent walks back and forth between `home` and `goal`.
  std::optional<Point2D> home;
};

struct World {
  std::uint8_t ground_class = classes::kAsphalt;
  std::vector<GroundRegion> regions;  // later regions take precedence
  std::vector<Cylinder> obstacles;
  std::vector<Box> walls;
  std::vector<Pedestrian> agents;

  void validate() const {
    for (const auto& o : obstacles) {
      if (!(o.radius > 0.0) || !(o.height_m > 0.0)) throw ConfigError("world: obstacle radius and height must be positive");
    }
    for (const auto& w : walls) {
      if (!(w.height_m > 0.0) || !(w.xmax > w.xmin) || !(w.ymax > w.ymin)) throw ConfigError("world: degenerate wall");
    }
    for (const auto& a : agents) {
      if (!(a.radius > 0.0) || !(a.v_des >= 0.0)) throw ConfigError("world: bad pedestrian");
    }
  }

  [[nodiscard]] std::uint8_t ground_at(double x, double y) const {
    for (auto it = regions.rbegin(); it != regions.rend(); ++it) {
      if (it->contains(x, y)) return it->class_id;
    }
    return ground_class;
  }
};

inline constexpr double kMaxPedestrianSpeed = 1.7;

/// Explicit Euler unicycle step.
[[nodiscard]] inline Pose2D step_unicycle(const Pose2D& pose, const ControlCommand& cmd, double dt) {
  if (!(dt > 0.0)) throw DomainError("step_unicycle: dt must be positive");
  return {pose.x + cmd.v * std::cos(pose.theta) * dt, pose.y + cmd.v * std::sin(pose.theta) * dt,
          wrap_angle(pose.theta + cmd.omega * dt)};
}

// ---------------------------------------------------------------- geometry

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 closest_point_on_box(const Box& b, double x, double y) {
  return {std::clamp(x, b.xmin, b.xmax), std::clamp(y, b.ymin, b.ymax)};
}

/// Signed distance from (x, y) to the box boundary (negative inside).
inline double box_distance(const Box& b, double x, double y) {
  const double dx = std::max({b.xmin - x, 0.0, x - b.xmax});
  const double dy = std::max({b.ymin - y, 0.0, y - b.ymax});
  if (dx > 0.0 || dy > 0.0) return std::hypot(dx, dy);
  return -std::min({x - b.xmin, b.xmax - x, y - b.ymin, b.ymax - y});
}

/// True iff the disc of `robot_radius` at `pose` overlaps any obstacle, wall
/// or pedestrian (touching does not count).
[[nodiscard]] inline bool check_collision(const World& world, const Pose2D& pose, double robot_radius) {
  for (const auto& o : world.obstacles) {
    if (std::hypot(pose.x - o.center.x, pose.y - o.center.y) < robot_radius + o.radius) return true;
  }
  for (const auto& a : world.agents) {
    if (std::hypot(pose.x - a.position.x, pose.y - a.position.y) < robot_radius + a.radius) return true;
  }
  for (const auto& w : world.walls) {
    if (box_distance(w, pose.x, pose.y) < robot_radius) return true;
  }
  return false;
}

/// Distance from the robot disc's edge to the nearest obstacle surface.
[[nodiscard]] inline double clearance(const World& world, const Pose2D& pose, double robot_radius) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : world.obstacles) {
    best = std::min(best, std::hypot(pose.x - o.center.x, pose.y - o.center.y) - o.radius);
  }
  for (const auto& a : world.agents) {
    best = std::min(best, std::hypot(pose.x - a.position.x, pose.y - a.position.y) - a.radius);
  }
  for (const auto& w : world.walls) best = std::min(best, box_distance(w, pose.x, pose.y));
  return best - robot_radius;
}

// ------------------------------------------------------------- pedestrians

/// Simplified social force: relaxation towards the desired velocity plus
/// exponential repulsion from other agents, the robot and walls.
struct SocialForceParams {
  double k_goal = 2.0;       // 1/s
  double k_rep = 2.0;        // m/s^2
  double sigma = 0.3;        // m
  double max_speed = kMaxPedestrianSpeed;
  double arrive_radius = 0.3;
  double interaction_range = 4.0;
};

struct RobotDisc {
  Point2D position;
  double radius = 0.3;
};

[[nodiscard]] inline std::vector<Pedestrian> step_pedestrians(const std::vector<Pedestrian>& agents,
                                                              const World& world, double dt,
                                                              const SocialForceParams& params = {},
                                                              std::optional<RobotDisc> robot = std::nullopt) {
  if (!(dt > 0.0)) throw DomainError("step_pedestrians: dt must be positive");
  std::vector<Pedestrian> next = agents;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Pedestrian& a = agents[i];
    Pedestrian& n = next[i];

    Point2D goal = a.goal;
    double gx = goal.x - a.position.x;
    double gy = goal.y - a.position.y;
    double gd = std::hypot(gx, gy);
    if (gd < params.arrive_radius && a.home) {
      n.goal = *a.home;
      n.home = a.goal;
      goal = n.goal;
      gx = goal.x - a.position.x;
      gy = goal.y - a.position.y;
      gd = std::hypot(gx, gy);
    }
    double ax = 0.0;
    double ay = 0.0;
    if (gd >= params.arrive_radius) {
      ax += params.k_goal * (a.v_des * gx / gd - a.velocity.x);
      ay += params.k_goal * (a.v_des * gy / gd - a.velocity.y);
    } else {
      ax -= params.k_goal * a.velocity.x;
      ay -= params.k_goal * a.velocity.y;
    }

    auto repel = [&](double ox, double oy, double reach, double dist_override = -1.0) {
      double dx = a.position.x - ox;
      double dy = a.position.y - oy;
      const double d = std::hypot(dx, dy);
      if (d > params.interaction_range) return;
      if (d < 1e-9) {
        dx = 1.0;
        dy = 0.0;
      } else {
        dx /= d;
        dy /= d;
      }
      const double gap = dist_override >= 0.0 ? dist_override : d;
      const double mag = params.k_rep * std::exp((reach - gap) / params.sigma);
      ax += mag * dx;
      ay += mag * dy;
    };

    for (std::size_t j = 0; j < agents.size(); ++j) {
      if (j == i) continue;
      repel(agents[j].position.x, agents[j].position.y, a.radius + agents[j].radius);
    }
    if (robot) repel(robot->position.x, robot->position.y, a.radius + robot->radius);
    for (const auto& o : world.obstacles) repel(o.center.x, o.center.y, a.radius + o.radius);
    for (const auto& w : world.walls) {
      const double sd = box_distance(w, a.position.x, a.position.y);
      const Vec2 q = closest_point_on_box(w, a.position.x, a.position.y);
      if (sd > 0.0) repel(q.x, q.y, a.radius, sd);
    }

    n.velocity.x = a.velocity.x + ax * dt;
    n.velocity.y = a.velocity.y + ay * dt;
    const double speed = std::hypot(n.velocity.x, n.velocity.y);
    if (speed > params.max_speed) {
      n.velocity.x *= params.max_speed / speed;
      n.velocity.y *= params.max_speed / speed;
    }
    n.position.x = a.position.x + n.velocity.x * dt;
    n.position.y = a.position.y + n.velocity.y * dt;
  }
  return next;
}

// ---------------------------------------------------------------- renderer

struct RenderedFrame {
  SemanticImage semantic;
  DepthImage depth;
};

namespace detail {

struct ColumnHit {
  double z_near;
  double z_far;
  double height_m;
  std::uint8_t class_id;
};

// Camera-frame column interval covered by a disc at (fwd, left) of radius r.
inline std::pair<int, int> disc_columns(double fwd, double left, double r, const CameraModel& cam, int width) {
  const double d = std::hypot(fwd, left);
  if (d <= r) return {0, width - 1};
  const double bearing = std::atan2(left, fwd);
  const double half = std::asin(r / d);
  const double a_max = bearing + half;  // leftmost
  const double a_min = bearing - half;  // rightmost
  if (a_min >= kPi / 2 || a_max <= -kPi / 2) return {1, 0};
  auto col_of = [&](double a) {
    a = std::clamp(a, -kPi / 2 + 1e-6, kPi / 2 - 1e-6);
    return cam.principal_col - cam.focal_px * std::tan(a);
  };
  const double c_lo = col_of(a_max);
  const double c_hi = col_of(a_min);
  const int lo = std::max(0, static_cast<int>(std::floor(c_lo)) - 1);
  const int hi = std::min(width - 1, static_cast<int>(std::ceil(c_hi)) + 1);
  return {lo, hi};
}

inline bool ray_disc(double ox, double oy, double dx, double dy, double cx, double cy, double r, double& t0,
                     double& t1) {
  const double fx = ox - cx;
  const double fy = oy - cy;
  const double a = dx * dx + dy * dy;
  const double b = 2.0 * (fx * dx + fy * dy);
  const double c = fx * fx + fy * fy - r * r;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return false;
  const double s = std::sqrt(disc);
  t0 = (-b - s) / (2.0 * a);
  t1 = (-b + s) / (2.0 * a);
  return t1 > 0.0;
}

inline bool ray_box(double ox, double oy, double dx, double dy, const Box& b, double& t0, double& t1) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  auto slab = [&](double o, double d, double mn, double mx) {
    if (std::abs(d) < 1e-12) return o >= mn && o <= mx;
    double a = (mn - o) / d;
    double c = (mx - o) / d;
    if (a > c) std::swap(a, c);
    lo = std::max(lo, a);
    hi = std::min(hi, c);
    return lo <= hi;
  };
  if (!slab(ox, dx, b.xmin, b.xmax) || !slab(oy, dy, b.ymin, b.ymax)) return false;
  t0 = lo;
  t1 = hi;
  return t1 > 0.0;
}

}  // namespace detail

/// Renders the semantic and depth images seen from `pose`. Each column casts
/// one horizontal ray; every extruded object it crosses occupies the rows
/// between its projected top and base, painted far to near. Rows below the
/// principal row that no object covers show the ground class at the
/// back-projected ground point; the rest is sky with no depth return.
/// Ground and objects farther than `max_range_m` (forward depth) are
/// unlabeled and have no depth return.
[[nodiscard]] inline RenderedFrame render_camera(const World& world, const Pose2D& pose, const CameraModel& camera,
                                                 ImageDims dims,
                                                 double max_range_m = std::numeric_limits<double>::infinity()) {
  if (!(max_range_m > 0.0)) throw DomainError("render_camera: range must be positive");
  camera.validate();
  if (!dims.valid()) throw DomainError("render_camera: image must be at least 2x2");
  RenderedFrame frame{SemanticImage(dims, classes::kSky), DepthImage(dims, kNoReturn)};

  const double cth = std::cos(pose.theta);
  const double sth = std::sin(pose.theta);
  const double f = camera.focal_px;
  const double cy = camera.principal_row;

  // Ground rows, row-major.
  const bool uniform_ground = world.regions.empty();
  for (int r = 0; r < dims.height; ++r) {
    const auto z = camera.ground_depth(r);
    if (!z) continue;
    std::uint8_t* sem = frame.semantic.row_data(r);
    float* dep = frame.depth.row_data(r);
    if (*z > max_range_m) {
      std::fill(sem, sem + dims.width, classes::kUnlabeled);
      continue;
    }
    for (int c = 0; c < dims.width; ++c) {
      dep[c] = static_cast<float>(*z);
      if (uniform_ground) {
        sem[c] = world.ground_class;
      } else {
        const double lateral = (camera.principal_col - c) * *z / f;
        const double wx = pose.x + *z * cth - lateral * sth;
        const double wy = pose.y + *z * sth + lateral * cth;
        sem[c] = world.ground_at(wx, wy);
      }
    }
  }

  std::vector<std::vector<detail::ColumnHit>> hits(std::size_t(dims.width));
  auto ray_dir = [&](int c) {
    const double u = (camera.principal_col - c) / f;  // lateral per unit forward
    return std::pair{cth - u * sth, sth + u * cth};
  };
  auto add_disc = [&](Point2D center, double radius, double height, std::uint8_t cls) {
    const double rx = center.x - pose.x;
    const double ry = center.y - pose.y;
    const double fwd = cth * rx + sth * ry;
    const double left = -sth * rx + cth * ry;
    if (fwd + radius <= 0.0) return;
    const auto [lo, hi] = detail::disc_columns(fwd, left, radius, camera, dims.width);
    for (int c = lo; c <= hi; ++c) {
      const auto [dx, dy] = ray_dir(c);
      double t0 = 0.0, t1 = 0.0;
      if (detail::ray_disc(pose.x, pose.y, dx, dy, center.x, center.y, radius, t0, t1) && t0 <= max_range_m) {
        hits[std::size_t(c)].push_back({std::max(t0, 1e-3), t1, height, cls});
      }
    }
  };
  for (const auto& o : world.obstacles) add_disc(o.center, o.radius, o.height_m, o.class_id);
  for (const auto& a : world.agents) add_disc(a.position, a.radius, a.height_m, classes::kPerson);
  for (int c = 0; c < dims.width && !world.walls.empty(); ++c) {
    const auto [dx, dy] = ray_dir(c);
    for (const auto& w : world.walls) {
      double t0 = 0.0, t1 = 0.0;
      if (detail::ray_box(pose.x, pose.y, dx, dy, w, t0, t1) && t0 <= max_range_m) {
        hits[std::size_t(c)].push_back({std::max(t0, 1e-3), t1, w.height_m, w.class_id});
      }
    }
  }

  for (int c = 0; c < dims.width; ++c) {
    auto& col_hits = hits[std::size_t(c)];
    if (col_hits.empty()) continue;
    std::sort(col_hits.begin(), col_hits.end(),
              [](const auto& a, const auto& b) { return a.z_near > b.z_near; });
    for (const auto& h : col_hits) {
      const double base = cy + f * camera.height_m / h.z_near;
      const double rise = f * (h.height_m - camera.height_m);
      const double top = std::min(cy - rise / h.z_near, cy - rise / h.z_far);
      const int r0 = std::max(0, static_cast<int>(std::ceil(top)));
      const int r1 = std::min(dims.height - 1, static_cast<int>(std::floor(base)));
      for (int r = r0; r <= r1; ++r) {
        frame.semantic.at(r, c) = h.class_id;
        frame.depth.at(r, c) = static_cast<float>(h.z_near);
      }
    }
  }
  return frame;
}

}  // namespace povnav::sim
