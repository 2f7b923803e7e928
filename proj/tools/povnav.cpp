// povnav command line: single episodes, suites, the ablation matrix and
// frame rendering.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "povnav/povnav.hpp"

using namespace povnav;
using namespace povnav::harness;

namespace {

struct WorldOptions {
  std::string env = "free";
  std::string world_file;
  double spacing = EnvironmentSpec{}.spacing_m;
  double radius = EnvironmentSpec{}.obstacle_radius_m;
  int pedestrians = 0;
  std::uint64_t seed = 0;
  std::vector<double> start;
  std::vector<double> goal;

  void add(CLI::App& app) {
    app.add_option("--env", env, "free | grid_field | corridor | l_corridor")->capture_default_str();
    app.add_option("--world", world_file, "world file; replaces --env (requires --start and --goal)");
    app.add_option("--spacing", spacing, "grid_field lattice spacing [m]")->capture_default_str();
    app.add_option("--radius", radius, "grid_field obstacle radius [m]")->capture_default_str();
    app.add_option("--pedestrians", pedestrians, "corridor agents")->capture_default_str();
    app.add_option("--seed", seed, "episode seed")->capture_default_str();
    app.add_option("--start", start, "start pose x y theta")->expected(3);
    app.add_option("--goal", goal, "goal x y")->expected(2);
  }

  [[nodiscard]] EnvironmentSpec spec() const {
    EnvironmentSpec s;
    s.kind = parse_environment_kind(env);
    s.spacing_m = spacing;
    s.obstacle_radius_m = radius;
    s.pedestrians = pedestrians;
    s.seed = seed;
    return s;
  }

  [[nodiscard]] std::pair<sim::World, Task> build() const {
    Task task;
    sim::World world;
    if (!world_file.empty()) {
      if (start.empty() || goal.empty()) throw ConfigError("--world needs --start and --goal");
      world = sim::load_world(world_file);
    } else {
      world = build_environment(spec());
      task = sample_task(spec(), seed);
    }
    if (!start.empty()) task.start = {start[0], start[1], start[2]};
    if (!goal.empty()) task.goal = {goal[0], goal[1]};
    return {world, task};
  }
};

void print_result(const EpisodeResult& r) {
  const char* outcome = r.success ? "success" : r.collision ? "collision" : "timeout";
  std::printf("outcome %s\npath_length_m %.3f\nstraight_line_m %.3f\ntime_s %.2f\nfinal_distance_m %.3f\n"
              "min_clearance_m %.3f\ncontrol_steps %d\nlatency_mean_ms %.3f\nlatency_max_ms %.3f\n",
              outcome, r.path_length_m, r.straight_line_m, r.time_s, r.final_distance_m, r.min_clearance_m,
              r.control_steps, r.mean_latency_s * 1e3, r.max_latency_s * 1e3);
}

void write_report(const SuiteReport& report, const std::string& out) {
  if (out.empty() || out == "-") {
    write_csv(std::cout, report);
    return;
  }
  std::ofstream f(out);
  if (!f) throw ConfigError("cannot write " + out);
  write_csv(f, report);
}

void print_aggregates(const SuiteReport& report) {
  for (const auto& a : report.aggregates) {
    std::fprintf(stderr, "%-14s %-9s success %5.1f%%  collision %5.1f%%  path %6.2f m (x%.3f)  p50 %.2f ms\n",
                 a.label.c_str(), to_string(a.mode).c_str(), 100.0 * a.success_rate(),
                 100.0 * a.collisions / std::max(1, a.episodes), a.mean_path_length_m, a.path_ratio(),
                 a.latency_p50_s * 1e3);
  }
}

SuiteProgress progress_printer(bool quiet) {
  if (quiet) return {};
  return [](const EpisodeRow& row, std::size_t done, std::size_t total) {
    std::fprintf(stderr, "[%zu/%zu] %s %s seed %llu: %s\n", done, total, row.label.c_str(),
                 to_string(row.mode).c_str(), static_cast<unsigned long long>(row.seed),
                 row.result.success ? "success" : row.result.collision ? "collision" : "timeout");
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image-space local planner and closed-loop benchmark"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one closed-loop episode");
  WorldOptions run_world;
  run_world.add(*run);
  std::string run_mode = "full";
  double t_max = 120.0;
  double range = 12.0;
  std::string trajectory_out;
  std::string frames_dir;
  int frame_every = 1;
  run->add_option("--mode", run_mode, "pog_only | pog_hog | full")->capture_default_str();
  run->add_option("--t-max", t_max, "episode time limit [s]")->capture_default_str();
  run->add_option("--range", range, "sensor range [m]")->capture_default_str();
  run->add_option("--trajectory", trajectory_out, "write x y theta per physics step");
  run->add_option("--frames", frames_dir, "write overlay frames (PPM) into this directory");
  run->add_option("--frame-every", frame_every, "keep every n-th frame")->check(CLI::PositiveNumber);

  // bench
  auto* bench = app.add_subcommand("bench", "run a suite file and write CSV");
  std::string suite_file;
  std::string bench_out;
  unsigned threads = 0;
  bool quiet = false;
  bench->add_option("suite", suite_file, "suite file")->required();
  bench->add_option("-o,--out", bench_out, "CSV output (default stdout)");
  bench->add_option("-j,--threads", threads, "worker threads (0 = all cores)");
  bench->add_flag("-q,--quiet", quiet, "no per-episode progress");

  // ablate
  auto* ablate = app.add_subcommand("ablate", "built-in ablation suite (3 scenarios x 3 modes)");
  int ablate_seeds = 20;
  std::string ablate_out;
  ablate->add_option("--seeds", ablate_seeds, "seeds per scenario and mode")->check(CLI::PositiveNumber);
  ablate->add_option("-o,--out", ablate_out, "CSV output (default stdout)");
  ablate->add_option("-j,--threads", threads, "worker threads (0 = all cores)");
  ablate->add_flag("-q,--quiet", quiet, "no per-episode progress");

  // render
  auto* render = app.add_subcommand("render", "render one camera frame");
  WorldOptions render_world;
  render_world.add(*render);
  std::string render_out = "frame.ppm";
  std::string semantic_out;
  std::string depth_out;
  std::string nav_out;
  std::string render_mode = "full";
  render->add_option("-o,--out", render_out, "overlay frame (PPM)")->capture_default_str();
  render->add_option("--semantic", semantic_out, "class-id image (PGM)");
  render->add_option("--depth", depth_out, "depth image in millimetres (16-bit PGM)");
  render->add_option("--navigability", nav_out, "navigability image (PGM, 0/1)");
  render->add_option("--mode", render_mode, "planner mode for the overlay")->capture_default_str();
  render->add_option("--range", range, "sensor range [m]")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto [world, task] = run_world.build();
      EpisodeConfig cfg;
      cfg.task = task;
      cfg.mode = parse_mode(run_mode);
      cfg.t_max = t_max;
      cfg.sensor_range_m = range;
      cfg.seed = run_world.seed;
      if (!frames_dir.empty()) {
        std::filesystem::create_directories(frames_dir);
        cfg.on_tick = [&](const Tick& t) {
          if (t.index % frame_every != 0) return;
          char name[32];
          std::snprintf(name, sizeof name, "/frame_%05d.ppm", t.index);
          overlay(t.frame->semantic, t.plan->diagnostics).save(frames_dir + name);
        };
      }
      const EpisodeResult r = run_episode(world, cfg);
      print_result(r);
      if (!trajectory_out.empty()) {
        std::ofstream f(trajectory_out);
        if (!f) throw ConfigError("cannot write " + trajectory_out);
        for (const auto& p : r.trajectory) f << p.x << ' ' << p.y << ' ' << p.theta << '\n';
      }
      return 0;
    }
    if (bench->parsed()) {
      const SuiteReport report = run_suite(load_suite(suite_file), threads, progress_printer(quiet));
      write_report(report, bench_out);
      print_aggregates(report);
      return 0;
    }
    if (ablate->parsed()) {
      const SuiteReport report = run_suite(ablation_suite(ablate_seeds), threads, progress_printer(quiet));
      write_report(report, ablate_out);
      print_aggregates(report);
      return 0;
    }
    if (render->parsed()) {
      auto [world, task] = render_world.build();
      PlannerParams params = PlannerParams::for_image({640, 480});
      const sim::RenderedFrame frame = sim::render_camera(world, task.start, params.camera, params.dims, range);
      const PlanResult plan = plan_step(frame.semantic, goal_input(task.start, task.goal, params),
                                        parse_mode(render_mode), params);
      overlay(frame.semantic, plan.diagnostics).save(render_out);
      if (!semantic_out.empty()) pgm::save_u8(semantic_out, frame.semantic);
      if (!depth_out.empty()) pgm::save_depth_mm(depth_out, frame.depth);
      if (!nav_out.empty()) pgm::save_u8(nav_out, classes_to_navigability(frame.semantic, params.table));
      std::printf("v %.4f\nomega %.4f\nlambda %.2f\nphi %.4f\n", plan.command.v, plan.command.omega,
                  plan.diagnostics.features.lambda, plan.diagnostics.features.phi);
      return 0;
    }
  } catch (const ContractViolation& e) {
    std::fprintf(stderr, "contract violation: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
