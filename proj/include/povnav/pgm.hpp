#pragma once

// Binary PGM (P5) I/O.
//
//   navigability / class-id images: maxval 255, one byte per pixel; for
//     navigability 0 = navigable, 1 = non-navigable (any other value is
//     rejected by read_navigability).
//   depth images: maxval 65535, two bytes per pixel, big-endian, value in
//     millimetres; 0 means no return.
//
// Rows are stored top to bottom, columns left to right. Comment lines
// starting with '#' are accepted in the header.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "povnav/core.hpp"
#include "povnav/segmentation.hpp"

namespace povnav::pgm {

namespace detail {

inline std::string next_token(std::istream& in) {
  std::string tok;
  char ch = 0;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string ignored;
      std::getline(in, ignored);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(ch);
  }
  return tok;
}

inline int parse_int(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("pgm: bad ") + what + " '" + tok + "'");
  }
}

struct Header {
  ImageDims dims;
  int maxval = 0;
};

inline Header read_header(std::istream& in) {
  const std::string magic = next_token(in);
  if (magic != "P5") throw ConfigError("pgm: expected binary P5 magic, got '" + magic + "'");
  Header h;
  h.dims.width = parse_int(next_token(in), "width");
  h.dims.height = parse_int(next_token(in), "height");
  h.maxval = parse_int(next_token(in), "maxval");
  if (h.dims.width <= 0 || h.dims.height <= 0) throw ConfigError("pgm: non-positive dimensions");
  if (h.maxval <= 0 || h.maxval > 65535) throw ConfigError("pgm: maxval out of range");
  return h;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("pgm: cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("pgm: cannot open '" + path + "' for writing");
  return out;
}

}  // namespace detail

inline void write_u8(std::ostream& out, const Grid<std::uint8_t>& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.cells().data()),
            static_cast<std::streamsize>(img.cells().size()));
}

inline Grid<std::uint8_t> read_u8(std::istream& in) {
  const auto h = detail::read_header(in);
  if (h.maxval > 255) throw ConfigError("pgm: expected an 8-bit image");
  Grid<std::uint8_t> img(h.dims, 0);
  in.read(reinterpret_cast<char*>(img.cells().data()),
          static_cast<std::streamsize>(img.cells().size()));
  if (in.gcount() != static_cast<std::streamsize>(img.cells().size())) {
    throw ConfigError("pgm: truncated pixel data");
  }
  return img;
}

inline void write_depth_mm(std::ostream& out, const DepthImage& depth) {
  out << "P5\n" << depth.width() << ' ' << depth.height() << "\n65535\n";
  for (float d : depth.cells()) {
    long mm = 0;
    if (std::isfinite(d) && d > 0.0f) mm = std::lround(double(d) * 1000.0);
    if (mm > 65535) mm = 65535;
    const char bytes[2] = {static_cast<char>((mm >> 8) & 0xff), static_cast<char>(mm & 0xff)};
    out.write(bytes, 2);
  }
}

inline DepthImage read_depth_mm(std::istream& in) {
  const auto h = detail::read_header(in);
  if (h.maxval <= 255) throw ConfigError("pgm: expected a 16-bit depth image");
  DepthImage depth(h.dims, kNoReturn);
  for (auto& d : depth.cells()) {
    unsigned char bytes[2];
    if (!in.read(reinterpret_cast<char*>(bytes), 2)) throw ConfigError("pgm: truncated pixel data");
    const int mm = (int(bytes[0]) << 8) | int(bytes[1]);
    d = mm == 0 ? kNoReturn : static_cast<float>(mm / 1000.0);
  }
  return depth;
}

[[nodiscard]] inline NavigabilityImage read_navigability(std::istream& in) {
  auto img = read_u8(in);
  if (!is_binary(img)) throw ConfigError("pgm: navigability image must contain only 0 and 1");
  return img;
}

inline void save_u8(const std::string& path, const Grid<std::uint8_t>& img) {
  auto out = detail::open_out(path);
  write_u8(out, img);
}
[[nodiscard]] inline Grid<std::uint8_t> load_u8(const std::string& path) {
  auto in = detail::open_in(path);
  return read_u8(in);
}
[[nodiscard]] inline NavigabilityImage load_navigability(const std::string& path) {
  auto in = detail::open_in(path);
  return read_navigability(in);
}
inline void save_depth_mm(const std::string& path, const DepthImage& depth) {
  auto out = detail::open_out(path);
  write_depth_mm(out, depth);
}
[[nodiscard]] inline DepthImage load_depth_mm(const std::string& path) {
  auto in = detail::open_in(path);
  return read_depth_mm(in);
}

}  // namespace povnav::pgm
