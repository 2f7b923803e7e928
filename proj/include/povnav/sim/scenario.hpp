#pragma once

// World files. One entity per line:
//
//   ground   class=3
//   region   xmin=0 xmax=10 ymin=-2 ymax=2 class=1
//   obstacle x=4 y=0.5 radius=0.2 height=1 [class=7]
//   wall     xmin=0 xmax=30 ymin=3 ymax=3.2 height=2 [class=8]
//   agent    x=10 y=0 gx=2 gy=0 [vdes=1.2 radius=0.25 height=1.7 patrol=1]
//
// With patrol=1 the agent walks back and forth between its start and goal.

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "povnav/keyvalue.hpp"
#include "povnav/sim/world.hpp"

namespace povnav::sim {

namespace detail {

inline std::uint8_t class_of(const kv::Line& l, std::uint8_t fallback) {
  const auto id = l.integer_or("class", fallback);
  if (id < 0 || id > 255) l.fail("class id out of range");
  return static_cast<std::uint8_t>(id);
}

}  // namespace detail

[[nodiscard]] inline World read_world(std::istream& in, const std::string& source = "<world>") {
  World w;
  for (const auto& l : kv::parse(in, source)) {
    if (l.keyword == "ground") {
      l.expect_only({"class"});
      w.ground_class = detail::class_of(l, w.ground_class);
    } else if (l.keyword == "region") {
      l.expect_only({"xmin", "xmax", "ymin", "ymax", "class"});
      w.regions.push_back({l.number_of("xmin"), l.number_of("xmax"), l.number_of("ymin"), l.number_of("ymax"),
                           detail::class_of(l, classes::kGrass)});
    } else if (l.keyword == "obstacle") {
      l.expect_only({"x", "y", "radius", "height", "class"});
      Cylinder c{{l.number_of("x"), l.number_of("y")}, l.number_of("radius"), l.number_of("height"),
                 detail::class_of(l, classes::kObstacle)};
      if (!(c.radius > 0.0) || !(c.height_m > 0.0)) l.fail("obstacle radius and height must be positive");
      w.obstacles.push_back(c);
    } else if (l.keyword == "wall") {
      l.expect_only({"xmin", "xmax", "ymin", "ymax", "height", "class"});
      Box b{l.number_of("xmin"), l.number_of("xmax"), l.number_of("ymin"), l.number_of("ymax"),
            l.number_of("height"), detail::class_of(l, classes::kWall)};
      if (!(b.xmax > b.xmin) || !(b.ymax > b.ymin) || !(b.height_m > 0.0)) l.fail("degenerate wall");
      w.walls.push_back(b);
    } else if (l.keyword == "agent") {
      l.expect_only({"x", "y", "gx", "gy", "vdes", "radius", "height", "patrol"});
      Pedestrian p;
      p.position = {l.number_of("x"), l.number_of("y")};
      p.goal = {l.number_of("gx"), l.number_of("gy")};
      p.v_des = l.number_or("vdes", p.v_des);
      p.radius = l.number_or("radius", p.radius);
      p.height_m = l.number_or("height", p.height_m);
      if (l.flag_or("patrol", false)) p.home = p.position;
      if (!(p.radius > 0.0) || p.v_des < 0.0 || p.v_des > kMaxPedestrianSpeed) l.fail("bad agent parameters");
      w.agents.push_back(p);
    } else {
      l.fail("unknown keyword '" + l.keyword + "'");
    }
  }
  return w;
}

[[nodiscard]] inline World load_world(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open world file: " + path);
  return read_world(in, path);
}

inline void write_world(std::ostream& out, const World& w) {
  const auto flags = out.flags();
  out << std::setprecision(17);
  out << "ground class=" << int(w.ground_class) << '\n';
  for (const auto& r : w.regions) {
    out << "region xmin=" << r.xmin << " xmax=" << r.xmax << " ymin=" << r.ymin << " ymax=" << r.ymax
        << " class=" << int(r.class_id) << '\n';
  }
  for (const auto& o : w.obstacles) {
    out << "obstacle x=" << o.center.x << " y=" << o.center.y << " radius=" << o.radius << " height=" << o.height_m
        << " class=" << int(o.class_id) << '\n';
  }
  for (const auto& b : w.walls) {
    out << "wall xmin=" << b.xmin << " xmax=" << b.xmax << " ymin=" << b.ymin << " ymax=" << b.ymax
        << " height=" << b.height_m << " class=" << int(b.class_id) << '\n';
  }
  for (const auto& a : w.agents) {
    // Patrol agents are written from their home so the file replays their route.
    const Point2D start = a.home ? *a.home : a.position;
    out << "agent x=" << start.x << " y=" << start.y << " gx=" << a.goal.x << " gy=" << a.goal.y
        << " vdes=" << a.v_des << " radius=" << a.radius << " height=" << a.height_m
        << " patrol=" << (a.home ? 1 : 0) << '\n';
  }
  out.flags(flags);
}

}  // namespace povnav::sim
