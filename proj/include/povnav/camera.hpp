#pragma once

#include <cmath>
#include <optional>

#include "povnav/core.hpp"

namespace povnav {

/// Forward-looking pinhole camera mounted on the robot at a fixed height with
/// zero pitch and roll. Camera axes: x right, y down, z forward.
struct CameraModel {
  double focal_px = 300.0;
  double principal_row = 239.5;
  double principal_col = 319.5;
  double height_m = 0.5;
  double pitch = 0.0;

  /// Principal point at the geometric image center.
  [[nodiscard]] static CameraModel centered(ImageDims dims, double focal_px, double height_m) {
    return {focal_px, (dims.height - 1) / 2.0, (dims.width - 1) / 2.0, height_m, 0.0};
  }

  void validate() const {
    if (!(focal_px > 0.0) || !std::isfinite(focal_px)) throw DomainError("camera: focal_px must be > 0");
    if (!(height_m > 0.0) || !std::isfinite(height_m)) throw DomainError("camera: height_m must be > 0");
    if (pitch != 0.0) throw DomainError("camera: only zero pitch is supported");
  }

  /// Forward depth of the ground seen at `row`, or nullopt at/above the principal row.
  [[nodiscard]] std::optional<double> ground_depth(double row) const {
    const double dr = row - principal_row;
    if (dr <= 0.0) return std::nullopt;
    return focal_px * height_m / dr;
  }

  /// Image row of a ground point at forward depth z.
  [[nodiscard]] double ground_row(double z) const { return principal_row + focal_px * height_m / z; }
};

/// A point in the robot frame: x forward, y left, z up, meters.
struct RobotFramePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct ImagePoint {
  double row = 0.0;
  double col = 0.0;
};

/// Projects a robot-frame point into the image (sub-pixel row, col).
/// Returns nullopt for points at or behind the image plane.
[[nodiscard]] inline std::optional<ImagePoint> project(const CameraModel& cam, RobotFramePoint p) {
  if (p.x <= 1e-9) return std::nullopt;
  const double row = cam.principal_row + cam.focal_px * (cam.height_m - p.z) / p.x;
  const double col = cam.principal_col - cam.focal_px * p.y / p.x;
  return ImagePoint{row, col};
}

/// Back-projects pixel (row, col) at forward depth z into the robot frame.
[[nodiscard]] inline RobotFramePoint back_project(const CameraModel& cam, double row, double col,
                                                  double z) {
  return {z, -(col - cam.principal_col) * z / cam.focal_px,
          cam.height_m - (row - cam.principal_row) * z / cam.focal_px};
}

}  // namespace povnav
