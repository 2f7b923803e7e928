#pragma once

// Per-frame planner: semantic image + goal -> velocity command.
//
//  full      navigability -> horizon -> POG -> HOG -> visual path -> servo
//  pog_hog   as full, but aligns with the HOG directly (no path margins)
//  pog_only  aligns with the POG at constant cruise speed; no horizon at all

#include <optional>
#include <string>

#include "povnav/camera.hpp"
#include "povnav/core.hpp"
#include "povnav/goalproj.hpp"
#include "povnav/horizon.hpp"
#include "povnav/pathgen.hpp"
#include "povnav/segmentation.hpp"
#include "povnav/servo.hpp"
#include "povnav/subgoal.hpp"

namespace povnav::harness {

enum class PlannerMode { kPogOnly, kPogHog, kFull };

[[nodiscard]] inline std::string to_string(PlannerMode m) {
  switch (m) {
    case PlannerMode::kPogOnly: return "pog_only";
    case PlannerMode::kPogHog: return "pog_hog";
    case PlannerMode::kFull: return "full";
  }
  return "?";
}

[[nodiscard]] inline PlannerMode parse_mode(const std::string& s) {
  if (s == "pog_only") return PlannerMode::kPogOnly;
  if (s == "pog_hog") return PlannerMode::kPogHog;
  if (s == "full") return PlannerMode::kFull;
  throw ConfigError("unknown planner mode: " + s);
}

struct PlannerParams {
  ImageDims dims{640, 480};
  CameraModel camera{};
  NavigabilityTable table = NavigabilityTable::standard();
  ObjectiveWeights weights{};
  ControlGains gains{};
  ControlLimits limits{};
  RobotFootprint footprint{};
  std::optional<GainSchedule> schedule;
  double lookahead_max_px = 240.0;  // cap on the alignment lookahead radius
  double cruise_speed = 1.0;        // pog_only
  double control_dt = 0.1;
  bool use_ground_goal = true;      // use the goal's own pixel as POG when it is in view
  bool horizon_filter = false;
  std::size_t horizon_filter_window = 10;

  /// Defaults for an image size: the camera keeps a 640 px-equivalent field
  /// of view and pixel-valued gains are scaled to the image height. The
  /// margin and k_v are the closed-loop tuned values, not the library defaults.
  [[nodiscard]] static PlannerParams for_image(ImageDims dims) {
    if (!dims.valid()) throw DomainError("planner: image must be at least 2x2");
    PlannerParams p;
    p.dims = dims;
    p.camera = CameraModel::centered(dims, 300.0 * dims.width / 640.0, 0.5);
    p.gains.lambda_star = 0.25 * dims.height;
    p.gains.k_v = 0.02 * 480.0 / dims.height;
    p.footprint.safety_margin_m = 0.5;
    p.lookahead_max_px = 0.5 * dims.height;
    return p;
  }

  void validate() const {
    if (!dims.valid()) throw DomainError("planner: image must be at least 2x2");
    camera.validate();
    weights.validate();
    gains.validate();
    limits.validate();
    footprint.validate();
    if (!(lookahead_max_px >= 1.0)) throw DomainError("planner: lookahead cap must be >= 1 px");
    if (!(cruise_speed >= 0.0)) throw DomainError("planner: cruise speed must be non-negative");
    if (!(control_dt > 0.0)) throw DomainError("planner: control period must be positive");
  }
};

/// Goal as seen by the planner: the relative bearing and, when the goal is a
/// ground point in view, its pixel.
struct GoalInput {
  double theta = 0.0;
  std::optional<PixelCoord> ground_pixel;
};

struct Diagnostics {
  Pog pog;
  double goal_bearing = 0.0;  // bearing the objectives are measured against
  std::optional<Hog> hog;
  VisualPath path;
  PathStats path_stats;
  VisualHorizon horizon;
  ServoFeatures features;
  ControlCommand raw{};  // before saturation and rate limiting
};

struct PlanResult {
  ControlCommand command;
  Diagnostics diagnostics;
};

/// Planning from a navigability image. `heights_filter`, when given, smooths
/// the horizon over time.
[[nodiscard]] inline PlanResult plan_from_navigability(const NavigabilityImage& nav, const GoalInput& goal,
                                                       PlannerMode mode, const PlannerParams& params,
                                                       const ControlCommand& prev,
                                                       HorizonFilter* heights_filter = nullptr) {
  if (nav.dims() != params.dims) throw ContractViolation("plan: image size differs from planner configuration");
  PlanResult out;
  Diagnostics& d = out.diagnostics;
  const ImageDims dims = params.dims;

  if (params.use_ground_goal && goal.ground_pixel && in_bounds(*goal.ground_pixel, dims)) {
    d.pog = {*goal.ground_pixel};
  } else {
    d.pog = project_goal({goal.theta}, dims);
  }
  d.goal_bearing = pog_bearing(d.pog, {goal.theta}, dims);

  if (mode == PlannerMode::kPogOnly) {
    d.features.phi = d.goal_bearing;
    d.raw = {params.cruise_speed, params.gains.k_omega * d.goal_bearing};
    out.command = saturate(d.raw, params.limits, prev, params.control_dt);
    return out;
  }

  const NavigabilityImage cleaned = postprocess_navigability(nav);
  std::vector<int> heights = horizon_heights(cleaned);
  if (heights_filter) heights = heights_filter->apply(heights);
  HorizonResult hr = horizon_from_heights(std::move(heights), dims);
  d.horizon = std::move(hr.horizon);
  d.hog = select_hog(d.horizon, d.goal_bearing, params.weights);
  d.features.lambda = proximity(d.horizon);

  if (mode == PlannerMode::kPogHog) {
    const PlanarPoint h = to_planning(d.hog->pixel, dims);
    d.features.phi = (h.x == 0 && h.y == 0) ? d.goal_bearing : std::atan2(double(h.y), double(h.x));
    d.features.lookahead = h.norm();
    d.path.points = {start_pixel(dims), d.hog->pixel};
  } else {
    d.path = generate_path(hr.processed, *d.hog, params.camera, params.footprint, &d.path_stats);
    const Alignment a = alignment(d.path, d.features.lambda, params.lookahead_max_px, dims, d.goal_bearing);
    d.features.phi = a.phi;
    d.features.lookahead = a.radius;
  }

  const GainSchedule* schedule = params.schedule ? &*params.schedule : nullptr;
  const double kv = params.gains.k_v * (schedule ? schedule->multiplier(d.features.lambda) : 1.0);
  d.raw = {kv * (d.features.lambda - params.gains.lambda_star), params.gains.k_omega * d.features.phi};
  out.command = control_command(d.features, params.gains, params.limits, prev, params.control_dt, schedule);
  return out;
}

[[nodiscard]] inline PlanResult plan_step(const SemanticImage& semantic, const GoalInput& goal, PlannerMode mode,
                                          const PlannerParams& params, const ControlCommand& prev = {},
                                          HorizonFilter* heights_filter = nullptr) {
  return plan_from_navigability(classes_to_navigability(semantic, params.table), goal, mode, params, prev,
                                heights_filter);
}

/// Stateful wrapper holding the previous command and the horizon filter.
class Planner {
 public:
  Planner(PlannerParams params, PlannerMode mode)
      : params_(std::move(params)), mode_(mode), filter_(params_.horizon_filter_window) {
    params_.validate();
  }

  [[nodiscard]] PlanResult step(const SemanticImage& semantic, const GoalInput& goal) {
    return step_navigability(classes_to_navigability(semantic, params_.table), goal);
  }

  [[nodiscard]] PlanResult step_navigability(const NavigabilityImage& nav, const GoalInput& goal) {
    PlanResult r =
        plan_from_navigability(nav, goal, mode_, params_, prev_, params_.horizon_filter ? &filter_ : nullptr);
    prev_ = r.command;
    return r;
  }

  void reset() {
    prev_ = {};
    filter_.reset();
  }

  [[nodiscard]] const PlannerParams& params() const { return params_; }
  [[nodiscard]] PlannerMode mode() const { return mode_; }
  [[nodiscard]] ControlCommand previous() const { return prev_; }

 private:
  PlannerParams params_;
  PlannerMode mode_;
  HorizonFilter filter_;
  ControlCommand prev_{};
};

}  // namespace povnav::harness
