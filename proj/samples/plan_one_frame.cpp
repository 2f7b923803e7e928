// Plans one step from a hand-built navigability image: a block in front of
// the robot, goal straight ahead.

#include <cstdio>

#include "povnav/povnav.hpp"

int main() {
  using namespace povnav;
  const ImageDims dims{160, 120};
  NavigabilityImage nav(dims, kNavigable);
  for (int r = 0; r < 70; ++r) {
    for (int c = 60; c < 100; ++c) nav.at(r, c) = kBlocked;
  }

  const auto params = harness::PlannerParams::for_image(dims);
  const auto plan = harness::plan_from_navigability(nav, {0.0, std::nullopt}, harness::PlannerMode::kFull, params, {});
  const auto& d = plan.diagnostics;
  std::printf("POG (%d,%d)  HOG (%d,%d)  path %zu px, %s\n", d.pog.pixel.row, d.pog.pixel.col, d.hog->pixel.row,
              d.hog->pixel.col, d.path.points.size(), d.path.mode == PathMode::kSafe ? "safe" : "fallback");
  std::printf("lambda %.1f px  phi %.3f rad  ->  v %.3f m/s  omega %.3f rad/s\n", d.features.lambda, d.features.phi,
              plan.command.v, plan.command.omega);
}
