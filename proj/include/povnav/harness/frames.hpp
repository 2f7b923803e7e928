#pragma once

// Debug frames: the semantic image in a fixed palette with the horizon,
// visual path, HOG and POG drawn on top, written as binary PPM (P6).

#include <array>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "povnav/core.hpp"
#include "povnav/harness/planner.hpp"
#include "povnav/segmentation.hpp"

namespace povnav::harness {

using Rgb = std::array<std::uint8_t, 3>;

class RgbImage {
 public:
  explicit RgbImage(ImageDims dims) : dims_(dims), data_(dims.area() * 3, 0) {}

  [[nodiscard]] ImageDims dims() const { return dims_; }

  void set(int row, int col, Rgb c) {
    if (row < 0 || col < 0 || row >= dims_.height || col >= dims_.width) return;
    const std::size_t i = (std::size_t(row) * dims_.width + col) * 3;
    data_[i] = c[0];
    data_[i + 1] = c[1];
    data_[i + 2] = c[2];
  }

  [[nodiscard]] Rgb get(int row, int col) const {
    const std::size_t i = (std::size_t(row) * dims_.width + col) * 3;
    return {data_[i], data_[i + 1], data_[i + 2]};
  }

  void disc(PixelCoord p, int radius, Rgb c) {
    for (int dr = -radius; dr <= radius; ++dr) {
      for (int dc = -radius; dc <= radius; ++dc) {
        if (dr * dr + dc * dc <= radius * radius) set(p.row + dr, p.col + dc, c);
      }
    }
  }

  void write_ppm(std::ostream& out) const {
    out << "P6\n" << dims_.width << ' ' << dims_.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(data_.data()), std::streamsize(data_.size()));
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    write_ppm(out);
  }

 private:
  ImageDims dims_;
  std::vector<std::uint8_t> data_;
};

[[nodiscard]] inline Rgb class_color(std::uint8_t id) {
  static constexpr std::array<Rgb, classes::kCount> palette{{
      {135, 190, 235},  // sky
      {90, 160, 70},    // grass
      {170, 140, 100},  // trail
      {110, 110, 110},  // asphalt
      {190, 180, 160},  // floor
      {30, 90, 40},     // tree
      {150, 80, 60},    // building
      {200, 120, 40},   // obstacle
      {90, 70, 120},    // wall
      {220, 60, 160},   // person
  }};
  if (id < palette.size()) return palette[id];
  return {0, 0, 0};
}

inline constexpr Rgb kHorizonColor{255, 230, 0};
inline constexpr Rgb kPathColor{0, 220, 80};
inline constexpr Rgb kFallbackPathColor{255, 120, 0};
inline constexpr Rgb kHogColor{30, 60, 255};
inline constexpr Rgb kPogColor{230, 20, 20};
inline constexpr Rgb kLookaheadColor{255, 255, 255};

/// Renders the overlay for one planning step.
[[nodiscard]] inline RgbImage overlay(const SemanticImage& semantic, const Diagnostics& d) {
  RgbImage img(semantic.dims());
  for (int r = 0; r < semantic.height(); ++r) {
    for (int c = 0; c < semantic.width(); ++c) img.set(r, c, class_color(semantic.at(r, c)));
  }
  for (const auto& p : d.horizon.pixels) img.set(p.row, p.col, kHorizonColor);
  const Rgb path_color = d.path.mode == PathMode::kSafe ? kPathColor : kFallbackPathColor;
  for (const auto& p : d.path.points) {
    img.set(p.row, p.col, path_color);
    img.set(p.row, p.col - 1, path_color);
    img.set(p.row, p.col + 1, path_color);
  }
  if (d.hog) img.disc(d.hog->pixel, 4, kHogColor);
  img.disc(d.pog.pixel, 4, kPogColor);
  return img;
}

}  // namespace povnav::harness
