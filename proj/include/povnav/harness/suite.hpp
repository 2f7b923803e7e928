#pragma once

// Batch runs. A suite file lists `run` lines; each expands to
// (modes x seeds) episodes:
//
//   run label=field2 env=grid_field spacing=2 modes=pog_only,pog_hog,full seeds=20
//   run label=crowd env=corridor pedestrians=6 modes=full first_seed=100 seeds=5 t_max=90
//
// Keys: label env spacing radius obstacle_height pedestrians modes seeds
// first_seed t_max epsilon range.  The report is CSV with one row per episode
// followed by one aggregate row per (label, mode).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "povnav/harness/environment.hpp"
#include "povnav/harness/episode.hpp"
#include "povnav/keyvalue.hpp"

namespace povnav::harness {

inline constexpr const char* kCsvVersion = "# povnav-suite v1";

struct SuiteRun {
  std::string label;
  EnvironmentSpec env;
  std::vector<PlannerMode> modes{PlannerMode::kFull};
  std::uint64_t first_seed = 0;
  int seeds = 20;
  double t_max = 120.0;
  double epsilon = 0.5;
  double sensor_range_m = 12.0;

  [[nodiscard]] EpisodeConfig config(PlannerMode mode) const {
    EpisodeConfig c;
    c.mode = mode;
    c.t_max = t_max;
    c.epsilon = epsilon;
    c.sensor_range_m = sensor_range_m;
    c.record_trajectory = false;
    return c;
  }
};

struct Suite {
  std::vector<SuiteRun> runs;

  [[nodiscard]] std::size_t episode_count() const {
    std::size_t n = 0;
    for (const auto& r : runs) n += r.modes.size() * std::size_t(r.seeds);
    return n;
  }
};

namespace detail {

inline std::vector<PlannerMode> parse_modes(const kv::Line& l, const std::string& list) {
  std::vector<PlannerMode> modes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      modes.push_back(parse_mode(item));
    } catch (const ConfigError& e) {
      l.fail(e.what());
    }
  }
  if (modes.empty()) l.fail("no modes given");
  return modes;
}

}  // namespace detail

[[nodiscard]] inline Suite read_suite(std::istream& in, const std::string& source = "<suite>") {
  Suite suite;
  for (const auto& l : kv::parse(in, source)) {
    if (l.keyword != "run") l.fail("unknown keyword '" + l.keyword + "'");
    l.expect_only({"label", "env", "spacing", "radius", "obstacle_height", "pedestrians", "modes", "seeds",
                   "first_seed", "t_max", "epsilon", "range"});
    SuiteRun run;
    try {
      run.env.kind = parse_environment_kind(l.text("env"));
    } catch (const ConfigError& e) {
      l.fail(e.what());
    }
    run.label = l.text_or("label", to_string(run.env.kind));
    run.env.spacing_m = l.number_or("spacing", run.env.spacing_m);
    run.env.obstacle_radius_m = l.number_or("radius", run.env.obstacle_radius_m);
    run.env.obstacle_height_m = l.number_or("obstacle_height", run.env.obstacle_height_m);
    run.env.pedestrians = static_cast<int>(l.integer_or("pedestrians", run.env.pedestrians));
    if (l.has("modes")) run.modes = detail::parse_modes(l, l.text("modes"));
    const auto seeds = l.integer_or("seeds", run.seeds);
    const auto first = l.integer_or("first_seed", 0);
    if (seeds < 1) l.fail("seeds must be >= 1");
    if (first < 0) l.fail("first_seed must be >= 0");
    run.seeds = static_cast<int>(seeds);
    run.first_seed = static_cast<std::uint64_t>(first);
    run.t_max = l.number_or("t_max", run.t_max);
    run.epsilon = l.number_or("epsilon", run.epsilon);
    run.sensor_range_m = l.number_or("range", run.sensor_range_m);
    try {
      run.env.validate();
      run.config(run.modes.front()).validate();
    } catch (const std::exception& e) {
      l.fail(e.what());
    }
    suite.runs.push_back(std::move(run));
  }
  if (suite.runs.empty()) throw ConfigError(source + ": suite declares no runs");
  return suite;
}

[[nodiscard]] inline Suite load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open suite file: " + path);
  return read_suite(in, path);
}

/// Free, 2 m grid field and 6-pedestrian corridor, each in all three modes.
[[nodiscard]] inline Suite ablation_suite(int seeds = 20) {
  const std::vector<PlannerMode> all{PlannerMode::kPogOnly, PlannerMode::kPogHog, PlannerMode::kFull};
  Suite s;
  SuiteRun free;
  free.label = "free";
  free.env.kind = EnvironmentKind::kFree;
  SuiteRun field;
  field.label = "grid_2m";
  field.env.kind = EnvironmentKind::kGridField;
  field.env.spacing_m = 2.0;
  SuiteRun crowd;
  crowd.label = "corridor_6";
  crowd.env.kind = EnvironmentKind::kCorridor;
  crowd.env.pedestrians = 6;
  for (SuiteRun* r : {&free, &field, &crowd}) {
    r->modes = all;
    r->seeds = seeds;
    s.runs.push_back(*r);
  }
  return s;
}

/// Grid fields from sparse to dense, full mode only.
[[nodiscard]] inline Suite density_suite(const std::vector<double>& spacings = {3.0, 2.5, 2.0, 1.5, 1.0},
                                         int seeds = 20) {
  Suite s;
  for (double sp : spacings) {
    SuiteRun r;
    std::ostringstream label;
    label << "grid_" << sp << "m";
    r.label = label.str();
    r.env.kind = EnvironmentKind::kGridField;
    r.env.spacing_m = sp;
    r.seeds = seeds;
    s.runs.push_back(r);
  }
  return s;
}

struct EpisodeRow {
  std::string label;
  EnvironmentKind env = EnvironmentKind::kFree;
  PlannerMode mode = PlannerMode::kFull;
  std::uint64_t seed = 0;
  EpisodeResult result;
};

struct Aggregate {
  std::string label;
  EnvironmentKind env = EnvironmentKind::kFree;
  PlannerMode mode = PlannerMode::kFull;
  int episodes = 0;
  int successes = 0;
  int collisions = 0;
  int timeouts = 0;
  double mean_path_length_m = 0.0;  // over successful episodes
  double mean_straight_line_m = 0.0;
  double mean_time_s = 0.0;
  double latency_mean_s = 0.0;
  double latency_p50_s = 0.0;
  double latency_p90_s = 0.0;
  double latency_max_s = 0.0;

  [[nodiscard]] double success_rate() const { return episodes ? double(successes) / episodes : 0.0; }
  [[nodiscard]] double path_ratio() const {
    return mean_straight_line_m > 0.0 ? mean_path_length_m / mean_straight_line_m : 0.0;
  }
};

struct SuiteReport {
  std::vector<EpisodeRow> rows;
  std::vector<Aggregate> aggregates;

  [[nodiscard]] const Aggregate* find(const std::string& label, PlannerMode mode) const {
    for (const auto& a : aggregates) {
      if (a.label == label && a.mode == mode) return &a;
    }
    return nullptr;
  }
};

/// Nearest-rank percentile; `q` in [0, 1].
[[nodiscard]] inline double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * double(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

[[nodiscard]] inline Aggregate aggregate(const std::vector<const EpisodeRow*>& rows) {
  Aggregate a;
  if (rows.empty()) return a;
  a.label = rows.front()->label;
  a.env = rows.front()->env;
  a.mode = rows.front()->mode;
  std::vector<double> lat;
  double lat_sum = 0.0;
  for (const auto* row : rows) {
    const EpisodeResult& r = row->result;
    ++a.episodes;
    a.successes += r.success;
    a.collisions += r.collision;
    a.timeouts += r.timeout;
    if (r.success) {
      a.mean_path_length_m += r.path_length_m;
      a.mean_straight_line_m += r.straight_line_m;
      a.mean_time_s += r.time_s;
    }
    for (double l : r.latencies_s) lat_sum += l;
    lat.insert(lat.end(), r.latencies_s.begin(), r.latencies_s.end());
  }
  if (a.successes > 0) {
    a.mean_path_length_m /= a.successes;
    a.mean_straight_line_m /= a.successes;
    a.mean_time_s /= a.successes;
  }
  if (!lat.empty()) {
    a.latency_mean_s = lat_sum / double(lat.size());
    a.latency_p50_s = percentile(lat, 0.5);
    a.latency_p90_s = percentile(lat, 0.9);
    a.latency_max_s = *std::max_element(lat.begin(), lat.end());
  }
  return a;
}

using SuiteProgress = std::function<void(const EpisodeRow&, std::size_t done, std::size_t total)>;

/// Runs every episode of the suite on `threads` workers (0 = hardware
/// concurrency). Rows come back in declaration order regardless of scheduling.
[[nodiscard]] inline SuiteReport run_suite(const Suite& suite, unsigned threads = 0,
                                           const SuiteProgress& progress = {}) {
  if (suite.runs.empty()) throw ConfigError("suite declares no runs");
  struct Job {
    const SuiteRun* run;
    PlannerMode mode;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& run : suite.runs) {
    for (PlannerMode m : run.modes) {
      for (int i = 0; i < run.seeds; ++i) jobs.push_back({&run, m, run.first_seed + std::uint64_t(i)});
    }
  }

  SuiteReport report;
  report.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex collect;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      EpisodeRow row{j.run->label, j.run->env.kind, j.mode, j.seed,
                     run_seeded(j.run->env, j.seed, j.run->config(j.mode))};
      std::lock_guard<std::mutex> lock(collect);
      report.rows[i] = std::move(row);
      ++done;
      if (progress) progress(report.rows[i], done, jobs.size());
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        worker();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<std::pair<std::string, PlannerMode>> keys;
  for (const auto& row : report.rows) {
    const std::pair<std::string, PlannerMode> key{row.label, row.mode};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& key : keys) {
    std::vector<const EpisodeRow*> group;
    for (const auto& row : report.rows) {
      if (row.label == key.first && row.mode == key.second) group.push_back(&row);
    }
    report.aggregates.push_back(aggregate(group));
  }
  return report;
}

inline void write_csv(std::ostream& out, const SuiteReport& report) {
  const auto flags = out.flags();
  out << kCsvVersion << '\n';
  out << "row_type,label,env,mode,seed,episodes,success,collision,timeout,path_length_m,straight_line_m,time_s,"
         "latency_mean_ms,latency_p50_ms,latency_p90_ms,latency_max_ms\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& row : report.rows) {
    const EpisodeResult& r = row.result;
    out << "episode," << row.label << ',' << to_string(row.env) << ',' << to_string(row.mode) << ',' << row.seed
        << ",1," << int(r.success) << ',' << int(r.collision) << ',' << int(r.timeout) << ',' << r.path_length_m
        << ',' << r.straight_line_m << ',' << r.time_s << ',' << r.mean_latency_s * 1e3 << ','
        << percentile(r.latencies_s, 0.5) * 1e3 << ',' << percentile(r.latencies_s, 0.9) * 1e3 << ','
        << r.max_latency_s * 1e3 << '\n';
  }
  // Aggregate rows carry rates in the outcome columns and success-only means
  // in the length and time columns.
  for (const auto& a : report.aggregates) {
    const double n = a.episodes ? double(a.episodes) : 1.0;
    out << "aggregate," << a.label << ',' << to_string(a.env) << ',' << to_string(a.mode) << ",," << a.episodes
        << ',' << a.successes / n << ',' << a.collisions / n << ',' << a.timeouts / n << ','
        << a.mean_path_length_m << ',' << a.mean_straight_line_m << ',' << a.mean_time_s << ','
        << a.latency_mean_s * 1e3 << ',' << a.latency_p50_s * 1e3 << ',' << a.latency_p90_s * 1e3 << ','
        << a.latency_max_s * 1e3 << '\n';
  }
  out.flags(flags);
}

}  // namespace povnav::harness
