#pragma once

// Image-grid and planning-frame primitives shared by every stage of the
// pipeline. The planning frame sits at the bottom-center pixel with x pointing
// up the image and y pointing to the left.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace povnav {

inline constexpr double kPi = std::numbers::pi;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a caller breaks an operation's precondition contract.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for malformed configuration, scenario or suite input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ImageDims {
  int width = 0;
  int height = 0;

  [[nodiscard]] constexpr std::size_t area() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  [[nodiscard]] constexpr int origin_col() const { return width / 2; }
  [[nodiscard]] constexpr bool valid() const { return width >= 2 && height >= 2; }
  friend constexpr bool operator==(const ImageDims&, const ImageDims&) = default;
};

struct PixelCoord {
  int row = 0;
  int col = 0;
  friend constexpr auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

struct PlanarPoint {
  int x = 0;  // up, pixels
  int y = 0;  // left, pixels

  [[nodiscard]] double norm() const { return std::hypot(double(x), double(y)); }
  friend constexpr bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// Planar robot pose in the world frame: meters, heading in [-pi, pi).
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2D&, const Point2D&) = default;
};

[[nodiscard]] constexpr bool in_bounds(PixelCoord p, ImageDims dims) {
  return p.row >= 0 && p.row < dims.height && p.col >= 0 && p.col < dims.width;
}

/// Bottom-center pixel: the robot's own position in the image.
[[nodiscard]] constexpr PixelCoord start_pixel(ImageDims dims) {
  return {dims.height - 1, dims.origin_col()};
}

[[nodiscard]] inline PlanarPoint to_planning(PixelCoord pixel, ImageDims dims) {
  if (!in_bounds(pixel, dims)) {
    throw DomainError("to_planning: pixel (" + std::to_string(pixel.row) + ", " +
                      std::to_string(pixel.col) + ") outside " + std::to_string(dims.width) +
                      "x" + std::to_string(dims.height));
  }
  return {(dims.height - 1) - pixel.row, dims.origin_col() - pixel.col};
}

[[nodiscard]] inline PixelCoord from_planning(PlanarPoint p, ImageDims dims) {
  const PixelCoord pixel{(dims.height - 1) - p.x, dims.origin_col() - p.y};
  if (!in_bounds(pixel, dims)) {
    throw DomainError("from_planning: point (" + std::to_string(p.x) + ", " +
                      std::to_string(p.y) + ") maps outside the image");
  }
  return pixel;
}

/// Wraps an angle into [-pi, pi).
[[nodiscard]] inline double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  w -= kPi;
  // fmod rounding can land exactly on +pi.
  return w >= kPi ? -kPi : w;
}

/// Bearing of a planning-frame point relative to the image's up axis,
/// positive to the left.
[[nodiscard]] inline double pixel_angle(PlanarPoint p) {
  if (p.x == 0 && p.y == 0) throw DomainError("pixel_angle: zero vector has no direction");
  const double a = std::atan2(double(p.y), double(p.x));
  return a >= kPi ? -kPi : a;
}

/// Dense row-major W x H grid.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(ImageDims dims, T fill) : dims_(dims), cells_(checked_area(dims), fill) {}

  [[nodiscard]] ImageDims dims() const { return dims_; }
  [[nodiscard]] int width() const { return dims_.width; }
  [[nodiscard]] int height() const { return dims_.height; }

  [[nodiscard]] T& at(int row, int col) { return cells_[index(row, col)]; }
  [[nodiscard]] const T& at(int row, int col) const { return cells_[index(row, col)]; }
  [[nodiscard]] T& operator[](PixelCoord p) { return at(p.row, p.col); }
  [[nodiscard]] const T& operator[](PixelCoord p) const { return at(p.row, p.col); }

  [[nodiscard]] T* row_data(int row) { return cells_.data() + std::size_t(row) * dims_.width; }
  [[nodiscard]] const T* row_data(int row) const {
    return cells_.data() + std::size_t(row) * dims_.width;
  }

  [[nodiscard]] std::vector<T>& cells() { return cells_; }
  [[nodiscard]] const std::vector<T>& cells() const { return cells_; }

  void fill(T value) { std::fill(cells_.begin(), cells_.end(), value); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static std::size_t checked_area(ImageDims dims) {
    if (dims.width < 0 || dims.height < 0) throw DomainError("Grid: negative dimensions");
    return dims.area();
  }
  [[nodiscard]] std::size_t index(int row, int col) const {
    return std::size_t(row) * std::size_t(dims_.width) + std::size_t(col);
  }

  ImageDims dims_{};
  std::vector<T> cells_;
};

inline constexpr std::uint8_t kNavigable = 0;
inline constexpr std::uint8_t kBlocked = 1;

/// Binary image, 0 = navigable and 1 = non-navigable.
using NavigabilityImage = Grid<std::uint8_t>;

[[nodiscard]] inline bool is_binary(const NavigabilityImage& nav) {
  for (auto v : nav.cells()) {
    if (v != kNavigable && v != kBlocked) return false;
  }
  return true;
}

}  // namespace povnav
