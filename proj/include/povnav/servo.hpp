#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "povnav/core.hpp"
#include "povnav/horizon.hpp"
#include "povnav/pathgen.hpp"

namespace povnav {

struct ServoFeatures {
  double lambda = 0.0;     // proximity, pixels
  double phi = 0.0;        // alignment, radians, positive left
  double lookahead = 1.0;  // circle radius used for phi, pixels
};

struct ControlGains {
  double k_v = 0.01;         // (m/s) per pixel of proximity error
  double k_omega = 1.5;      // (rad/s) per radian of misalignment
  double lambda_star = 120;  // desired proximity, pixels

  void validate() const {
    if (!(k_v > 0.0) || !(k_omega > 0.0) || !(lambda_star > 0.0)) {
      throw DomainError("control gains must be positive");
    }
  }
};

struct ControlLimits {
  double v_max = 2.0;
  double omega_max = kPi;
  double dv_max = 1.5;      // m/s^2
  double domega_max = 4.0;  // rad/s^2

  void validate() const {
    if (!(v_max > 0.0) || !(omega_max > 0.0) || !(dv_max > 0.0) || !(domega_max > 0.0)) {
      throw DomainError("control limits must be positive");
    }
  }
};

struct ControlCommand {
  double v = 0.0;
  double omega = 0.0;
  friend bool operator==(const ControlCommand&, const ControlCommand&) = default;
};

/// Optional proximity-dependent scaling of k_v: the multiplier of the first
/// entry whose threshold exceeds lambda applies (1 when none does).
struct GainSchedule {
  struct Step {
    double below_lambda;
    double multiplier;
  };
  std::vector<Step> steps;

  [[nodiscard]] double multiplier(double lambda) const {
    for (const auto& s : steps) {
      if (lambda < s.below_lambda) return s.multiplier;
    }
    return 1.0;
  }
};

/// Minimum distance from the start pixel to the horizon.
[[nodiscard]] inline double proximity(const VisualHorizon& horizon) {
  if (horizon.empty()) throw ContractViolation("proximity: empty horizon");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : horizon.pixels) best = std::min(best, to_planning(p, horizon.dims).norm());
  return best;
}

struct Alignment {
  double phi = 0.0;
  double radius = 1.0;
  PixelCoord lookahead;
};

/// Lookahead on the path at radius R = max(1, min(lambda / 2, d_max)): the
/// first point from the start at least R away, else the last point. A path
/// that never leaves the start pixel aligns with `fallback_bearing` (the
/// POG bearing).
[[nodiscard]] inline Alignment alignment(const VisualPath& path, double lambda, double d_max,
                                         ImageDims dims, double fallback_bearing) {
  if (path.points.empty()) throw ContractViolation("alignment: empty path");
  Alignment out;
  out.radius = std::max(1.0, std::min(lambda / 2.0, d_max));
  out.lookahead = path.points.back();
  for (const auto& p : path.points) {
    if (to_planning(p, dims).norm() >= out.radius) {
      out.lookahead = p;
      break;
    }
  }
  const PlanarPoint la = to_planning(out.lookahead, dims);
  out.phi = (la.x == 0 && la.y == 0) ? std::clamp(fallback_bearing, -kPi / 2, kPi / 2)
                                     : std::atan2(double(la.y), double(la.x));
  return out;
}

/// Clamps a raw command to the velocity bounds and rate-limits it against the
/// previous command.
[[nodiscard]] inline ControlCommand saturate(ControlCommand raw, const ControlLimits& limits,
                                             const ControlCommand& prev, double dt) {
  if (!(dt > 0.0)) throw DomainError("saturate: dt must be positive");
  double v = std::clamp(raw.v, -limits.v_max, limits.v_max);
  double w = std::clamp(raw.omega, -limits.omega_max, limits.omega_max);
  const double dv = limits.dv_max * dt;
  const double dw = limits.domega_max * dt;
  v = std::clamp(std::clamp(v, prev.v - dv, prev.v + dv), -limits.v_max, limits.v_max);
  w = std::clamp(std::clamp(w, prev.omega - dw, prev.omega + dw), -limits.omega_max, limits.omega_max);
  return {v, w};
}

/// Proportional servo law: speed from the proximity error, turn rate from the
/// alignment (positive phi, lookahead to the left, turns left).
[[nodiscard]] inline ControlCommand control_command(const ServoFeatures& f, const ControlGains& gains,
                                                    const ControlLimits& limits, const ControlCommand& prev,
                                                    double dt, const GainSchedule* schedule = nullptr) {
  const double kv = gains.k_v * (schedule ? schedule->multiplier(f.lambda) : 1.0);
  return saturate({kv * (f.lambda - gains.lambda_star), gains.k_omega * f.phi}, limits, prev, dt);
}

}  // namespace povnav
