#pragma once

// Benchmark environments and start/goal sampling.
//
//  free        empty asphalt plane; goals 32 m away at a random bearing
//  grid_field  cylinders on a square lattice filling x in [2, 30], |y| <= 10;
//              start at x = 0, goal at x = 32, both with random lateral offset,
//              resampled until the straight segment grazes an obstacle
//  corridor    30 m x 6 m walled corridor with patrolling pedestrians
//  l_corridor  two 6 m wide legs joined at a right angle, agents in both legs

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "povnav/core.hpp"
#include "povnav/sim/world.hpp"

namespace povnav::harness {

enum class EnvironmentKind { kFree, kGridField, kCorridor, kLCorridor };

[[nodiscard]] inline std::string to_string(EnvironmentKind k) {
  switch (k) {
    case EnvironmentKind::kFree: return "free";
    case EnvironmentKind::kGridField: return "grid_field";
    case EnvironmentKind::kCorridor: return "corridor";
    case EnvironmentKind::kLCorridor: return "l_corridor";
  }
  return "?";
}

[[nodiscard]] inline EnvironmentKind parse_environment_kind(const std::string& s) {
  if (s == "free") return EnvironmentKind::kFree;
  if (s == "grid_field" || s == "grid") return EnvironmentKind::kGridField;
  if (s == "corridor") return EnvironmentKind::kCorridor;
  if (s == "l_corridor") return EnvironmentKind::kLCorridor;
  throw ConfigError("unknown environment kind: " + s);
}

struct EnvironmentSpec {
  EnvironmentKind kind = EnvironmentKind::kFree;
  double spacing_m = 2.0;
  double obstacle_radius_m = 0.1;
  double obstacle_height_m = 1.0;
  double field_x_min = 2.0;
  double field_x_max = 30.0;
  double field_half_width = 10.0;
  double corridor_length_m = 30.0;
  double corridor_width_m = 6.0;
  double wall_height_m = 2.0;
  int pedestrians = 0;
  double ped_speed_min = 0.6;
  double ped_speed_max = 1.5;
  double goal_distance_m = 32.0;
  double goal_bearing_max = kPi / 2;  // free: goal bearing drawn from [-max, max]
  double lateral_spread_m = 4.0;      // grid_field: |start.y|, |goal.y| bound
  std::uint64_t seed = 0;

  void validate() const {
    if (!(spacing_m > 0.0)) throw ConfigError("environment: spacing_m must be positive");
    if (!(obstacle_radius_m > 0.0) || !(obstacle_height_m > 0.0)) {
      throw ConfigError("environment: obstacle radius and height must be positive");
    }
    if (pedestrians < 0) throw ConfigError("environment: pedestrian count must be non-negative");
    if (!(corridor_length_m > 4.0) || !(corridor_width_m > 1.0)) throw ConfigError("environment: corridor too small");
    if (!(field_x_max > field_x_min) || !(field_half_width > 0.0)) throw ConfigError("environment: empty field");
    if (!(ped_speed_min >= 0.0) || ped_speed_max < ped_speed_min || ped_speed_max > sim::kMaxPedestrianSpeed) {
      throw ConfigError("environment: pedestrian speeds must satisfy 0 <= min <= max <= 1.7");
    }
    if (!(goal_distance_m > 0.0)) throw ConfigError("environment: goal distance must be positive");
  }
};

struct Task {
  Pose2D start;
  Point2D goal;

  [[nodiscard]] double straight_line() const { return std::hypot(goal.x - start.x, goal.y - start.y); }
};

namespace detail {

// Separate streams so that the world and the task of one seed are independent.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(salt)};
  return std::mt19937_64(seq);
}

inline double segment_distance(Point2D a, Point2D b, Point2D p) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(a.x + t * dx - p.x, a.y + t * dy - p.y);
}

inline void add_wall(sim::World& w, double x0, double x1, double y0, double y1, double h) {
  w.walls.push_back({std::min(x0, x1), std::max(x0, x1), std::min(y0, y1), std::max(y0, y1), h, classes::kWall});
}

inline sim::Pedestrian make_agent(std::mt19937_64& rng, Point2D from, Point2D to, const EnvironmentSpec& spec) {
  std::uniform_real_distribution<double> speed(spec.ped_speed_min, spec.ped_speed_max);
  sim::Pedestrian p;
  p.position = from;
  p.goal = to;
  p.home = from;
  p.v_des = speed(rng);
  return p;
}

}  // namespace detail

[[nodiscard]] inline sim::World build_environment(const EnvironmentSpec& spec) {
  spec.validate();
  sim::World w;
  w.ground_class = classes::kAsphalt;
  auto rng = detail::stream(spec.seed, 1);
  const double hw = spec.corridor_width_m / 2;
  const double len = spec.corridor_length_m;
  const double t = 0.2;  // wall thickness

  switch (spec.kind) {
    case EnvironmentKind::kFree:
      break;
    case EnvironmentKind::kGridField: {
      const int ny = static_cast<int>(std::floor(spec.field_half_width / spec.spacing_m + 1e-9));
      for (double x = spec.field_x_min; x <= spec.field_x_max + 1e-9; x += spec.spacing_m) {
        for (int j = -ny; j <= ny; ++j) {
          w.obstacles.push_back({{x, j * spec.spacing_m}, spec.obstacle_radius_m, spec.obstacle_height_m,
                                 classes::kObstacle});
        }
      }
      break;
    }
    case EnvironmentKind::kCorridor: {
      detail::add_wall(w, -1.0, len + 1.0, hw, hw + t, spec.wall_height_m);
      detail::add_wall(w, -1.0, len + 1.0, -hw - t, -hw, spec.wall_height_m);
      detail::add_wall(w, -1.0 - t, -1.0, -hw - t, hw + t, spec.wall_height_m);
      detail::add_wall(w, len + 1.0, len + 1.0 + t, -hw - t, hw + t, spec.wall_height_m);
      std::uniform_real_distribution<double> ux(4.0, len - 2.0);
      std::uniform_real_distribution<double> uy(-hw + 0.6, hw - 0.6);
      for (int i = 0; i < spec.pedestrians; ++i) {
        // Alternate walking directions so the flow is bidirectional.
        const double y = uy(rng);
        const Point2D from{ux(rng), y};
        const Point2D to{i % 2 == 0 ? 1.0 : len - 1.0, uy(rng)};
        w.agents.push_back(detail::make_agent(rng, from, to, spec));
      }
      break;
    }
    case EnvironmentKind::kLCorridor: {
      // Leg A along +x: x in [0, len], |y| <= hw. Leg B along +y from the far
      // end of leg A: x in [len - 2hw, len], y in [-hw, len].
      const double xi = len - 2 * hw;
      detail::add_wall(w, -1.0, len + t, -hw - t, -hw, spec.wall_height_m);    // outer, leg A
      detail::add_wall(w, len, len + t, -hw - t, len + 1.0, spec.wall_height_m);  // outer, leg B
      detail::add_wall(w, -1.0, xi, hw, hw + t, spec.wall_height_m);            // inner, leg A
      detail::add_wall(w, xi - t, xi, hw, len + 1.0, spec.wall_height_m);       // inner, leg B
      detail::add_wall(w, -1.0 - t, -1.0, -hw - t, hw + t, spec.wall_height_m);
      detail::add_wall(w, xi - t, len + t, len + 1.0, len + 1.0 + t, spec.wall_height_m);
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      for (int i = 0; i < spec.pedestrians; ++i) {
        const bool leg_a = i % 2 == 0;
        const double lat = -hw + 0.6 + (2 * hw - 1.2) * u01(rng);
        const double lat2 = -hw + 0.6 + (2 * hw - 1.2) * u01(rng);
        const double along = 4.0 + (xi - 4.0) * u01(rng);
        if (leg_a) {
          w.agents.push_back(detail::make_agent(rng, {along, lat}, {i % 4 == 0 ? 1.0 : xi, lat2}, spec));
        } else {
          const double cx = len - hw;
          w.agents.push_back(detail::make_agent(rng, {cx + lat, hw + along}, {cx + lat2, i % 4 == 1 ? hw : len - 1.0},
                                                spec));
        }
      }
      break;
    }
  }
  w.validate();
  return w;
}

/// Start pose and goal for episode `seed` in environment `spec`. The start
/// heading points at the goal.
[[nodiscard]] inline Task sample_task(const EnvironmentSpec& spec, std::uint64_t seed) {
  spec.validate();
  auto rng = detail::stream(seed, 2);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Task task;
  switch (spec.kind) {
    case EnvironmentKind::kFree: {
      const double bearing = (2 * u01(rng) - 1) * spec.goal_bearing_max;
      task.start = {0.0, 0.0, 0.0};
      task.goal = {spec.goal_distance_m * std::cos(bearing), spec.goal_distance_m * std::sin(bearing)};
      // The robot starts facing forward, so the goal bearing is the initial misalignment.
      return task;
    }
    case EnvironmentKind::kGridField: {
      const sim::World w = build_environment(spec);
      const double graze = spec.obstacle_radius_m + 0.15;
      for (int attempt = 0; attempt < 10000; ++attempt) {
        const Point2D s{0.0, (2 * u01(rng) - 1) * spec.lateral_spread_m};
        const Point2D g{spec.goal_distance_m, (2 * u01(rng) - 1) * spec.lateral_spread_m};
        bool grazes = false;
        for (const auto& o : w.obstacles) grazes = grazes || detail::segment_distance(s, g, o.center) < graze;
        if (!grazes) continue;
        task.start = {s.x, s.y, std::atan2(g.y - s.y, g.x - s.x)};
        task.goal = g;
        return task;
      }
      throw ConfigError("sample_task: no grazing start/goal pair found");
    }
    case EnvironmentKind::kCorridor:
      task.start = {1.0, 0.0, 0.0};
      task.goal = {spec.corridor_length_m - 1.0, 0.0};
      return task;
    case EnvironmentKind::kLCorridor: {
      const double hw = spec.corridor_width_m / 2;
      task.start = {1.0, 0.0, 0.0};
      task.goal = {spec.corridor_length_m - hw, spec.corridor_length_m - 1.0};
      return task;
    }
  }
  return task;
}

}  // namespace povnav::harness
