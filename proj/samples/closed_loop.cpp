// Loads a world file and drives from a start pose to a goal, printing the
// pose once per second.
//
//   closed_loop samples/slalom.world

#include <cstdio>

#include "povnav/povnav.hpp"

int main(int argc, char** argv) {
  using namespace povnav;
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s WORLD_FILE\n", argv[0]);
    return 2;
  }
  try {
    const sim::World world = sim::load_world(argv[1]);
    harness::EpisodeConfig cfg;
    cfg.task.start = {0.0, 0.0, 0.0};
    cfg.task.goal = {14.0, 0.0};
    cfg.t_max = 60.0;
    cfg.on_tick = [](const harness::Tick& t) {
      if (t.index % 10 == 0) {
        std::printf("t=%5.1f  x=%6.2f y=%6.2f  v=%.2f\n", t.time_s, t.pose.x, t.pose.y, t.plan->command.v);
      }
    };
    const auto r = harness::run_episode(world, cfg);
    std::printf("%s after %.1f s, path %.2f m (straight %.2f m)\n",
                r.success ? "reached goal" : r.collision ? "collided" : "timed out", r.time_s, r.path_length_m,
                r.straight_line_m);
    return r.success ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
