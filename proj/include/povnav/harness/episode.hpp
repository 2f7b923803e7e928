#pragma once

// Closed-loop episode: render -> plan -> command -> physics, until the goal
// radius is reached, the robot collides, or time runs out.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "povnav/goalproj.hpp"
#include "povnav/harness/environment.hpp"
#include "povnav/harness/planner.hpp"
#include "povnav/segmentation.hpp"
#include "povnav/sim/world.hpp"

namespace povnav::harness {

/// State handed to the per-tick observer after each planning step.
struct Tick {
  int index = 0;
  double time_s = 0.0;
  Pose2D pose;
  const sim::World* world = nullptr;
  const sim::RenderedFrame* frame = nullptr;
  const NavigabilityImage* navigability = nullptr;
  const PlanResult* plan = nullptr;
};

struct EpisodeConfig {
  Task task;
  double epsilon = 0.5;
  double t_max = 120.0;
  PlannerMode mode = PlannerMode::kFull;
  PlannerParams planner = PlannerParams::for_image({640, 480});
  double physics_dt = 0.05;
  int physics_steps_per_control = 2;
  double robot_radius = 0.3;
  double sensor_range_m = 12.0;  // labels beyond this forward depth are unavailable
  sim::SocialForceParams social{};
  SegmentationNoise noise{};
  std::uint64_t seed = 0;
  bool record_trajectory = true;
  std::function<void(const Tick&)> on_tick;

  void validate() const {
    if (!(epsilon > 0.0)) throw ConfigError("episode: epsilon must be positive");
    if (!(t_max > 0.0)) throw ConfigError("episode: t_max must be positive");
    if (!(physics_dt > 0.0) || physics_steps_per_control < 1) throw ConfigError("episode: bad time step");
    if (!(robot_radius > 0.0)) throw ConfigError("episode: robot radius must be positive");
    if (!(sensor_range_m > 0.0)) throw ConfigError("episode: sensor range must be positive");
    planner.validate();
  }
};

struct EpisodeResult {
  bool success = false;
  bool collision = false;
  bool timeout = false;
  double path_length_m = 0.0;
  double straight_line_m = 0.0;
  double time_s = 0.0;
  double final_distance_m = 0.0;
  double min_clearance_m = 0.0;
  int control_steps = 0;
  std::vector<Pose2D> trajectory;         // one pose per physics step, start included
  std::vector<ControlCommand> commands;   // one per control step
  // Planner-only wall time per action; not reproducible run to run.
  std::vector<double> latencies_s;
  double mean_latency_s = 0.0;
  double max_latency_s = 0.0;

  /// Everything except the wall-clock latency fields.
  [[nodiscard]] bool same_outcome(const EpisodeResult& o) const {
    auto same_poses = [](const std::vector<Pose2D>& a, const std::vector<Pose2D>& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].x != b[i].x || a[i].y != b[i].y || a[i].theta != b[i].theta) return false;
      }
      return true;
    };
    return success == o.success && collision == o.collision && timeout == o.timeout &&
           path_length_m == o.path_length_m && straight_line_m == o.straight_line_m && time_s == o.time_s &&
           final_distance_m == o.final_distance_m && min_clearance_m == o.min_clearance_m &&
           control_steps == o.control_steps && commands == o.commands && same_poses(trajectory, o.trajectory);
  }
};

/// Relative bearing and, if visible, the ground pixel of the goal.
[[nodiscard]] inline GoalInput goal_input(const Pose2D& pose, const Point2D& goal, const PlannerParams& params) {
  GoalInput g;
  g.theta = relative_goal_angle(pose, goal).theta;
  g.ground_pixel = project_ground_goal(pose, goal, params.camera, params.dims);
  return g;
}

[[nodiscard]] inline EpisodeResult run_episode(const sim::World& initial, const EpisodeConfig& config) {
  config.validate();
  initial.validate();
  using Clock = std::chrono::steady_clock;

  sim::World world = initial;
  Planner planner(config.planner, config.mode);
  std::mt19937_64 noise_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  EpisodeResult res;
  Pose2D pose = config.task.start;
  pose.theta = wrap_angle(pose.theta);
  const Point2D goal = config.task.goal;
  res.straight_line_m = config.task.straight_line();
  res.min_clearance_m = sim::clearance(world, pose, config.robot_radius);
  if (config.record_trajectory) res.trajectory.push_back(pose);

  auto distance_to_goal = [&] { return std::hypot(goal.x - pose.x, goal.y - pose.y); };
  ControlCommand cmd{};
  const long max_steps = static_cast<long>(std::ceil(config.t_max / config.physics_dt - 1e-9));

  if (sim::check_collision(world, pose, config.robot_radius)) {
    res.collision = true;
  } else if (distance_to_goal() <= config.epsilon) {
    res.success = true;
  }

  for (long step = 0; step < max_steps && !res.collision && !res.success; ++step) {
    if (step % config.physics_steps_per_control == 0) {
      const sim::RenderedFrame frame = sim::render_camera(world, pose, config.planner.camera, config.planner.dims,
                                                             config.sensor_range_m);
      const GoalInput gi = goal_input(pose, goal, config.planner);

      auto t0 = Clock::now();
      NavigabilityImage nav = classes_to_navigability(frame.semantic, config.planner.table);
      double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
      if (config.noise.enabled()) nav = config.noise.apply(nav, noise_rng);
      t0 = Clock::now();
      const PlanResult plan = planner.step_navigability(nav, gi);
      elapsed += std::chrono::duration<double>(Clock::now() - t0).count();

      res.latencies_s.push_back(elapsed);
      cmd = plan.command;
      res.commands.push_back(cmd);
      if (config.on_tick) {
        config.on_tick({res.control_steps, step * config.physics_dt, pose, &world, &frame, &nav, &plan});
      }
      ++res.control_steps;
    }

    const Pose2D next = sim::step_unicycle(pose, cmd, config.physics_dt);
    world.agents = sim::step_pedestrians(world.agents, world, config.physics_dt, config.social,
                                         sim::RobotDisc{{pose.x, pose.y}, config.robot_radius});
    res.path_length_m += std::hypot(next.x - pose.x, next.y - pose.y);
    pose = next;
    res.time_s = (step + 1) * config.physics_dt;
    if (config.record_trajectory) res.trajectory.push_back(pose);

    res.min_clearance_m = std::min(res.min_clearance_m, sim::clearance(world, pose, config.robot_radius));
    if (sim::check_collision(world, pose, config.robot_radius)) {
      res.collision = true;
    } else if (distance_to_goal() <= config.epsilon) {
      res.success = true;
    }
  }
  res.timeout = !res.success && !res.collision;
  res.final_distance_m = distance_to_goal();
  if (!res.latencies_s.empty()) {
    double sum = 0.0;
    for (double l : res.latencies_s) {
      sum += l;
      res.max_latency_s = std::max(res.max_latency_s, l);
    }
    res.mean_latency_s = sum / double(res.latencies_s.size());
  }
  return res;
}

/// Episode `seed` of an environment: builds the world and samples the task.
[[nodiscard]] inline EpisodeResult run_seeded(EnvironmentSpec spec, std::uint64_t seed, EpisodeConfig config) {
  spec.seed = seed;
  const sim::World world = build_environment(spec);
  config.task = sample_task(spec, seed);
  config.seed = seed;
  return run_episode(world, config);
}

}  // namespace povnav::harness
