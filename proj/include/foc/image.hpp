#pragma once

#include "foc/error.hpp"
#include "foc/grid.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace foc {

/// Axis-aligned rectangle in pixel coordinates; (x, y) is the top-left corner.
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  long long area() const { return static_cast<long long>(w) * h; }

  bool fits_within(int image_width, int image_height) const {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && x + w <= image_width &&
           y + h <= image_height;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Intersection-over-union of two boxes; 0 when either has no area.
double box_iou(const BoundingBox& a, const BoundingBox& b);

/// 8-bit grayscale raster.
struct GrayImage {
  Grid8 pixels;

  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0)
      : pixels(Grid8::Constant(height, width, fill)) {}
  explicit GrayImage(Grid8 grid) : pixels(std::move(grid)) {}

  int width() const { return static_cast<int>(pixels.cols()); }
  int height() const { return static_cast<int>(pixels.rows()); }
  std::uint8_t at(int x, int y) const { return pixels(y, x); }
  std::uint8_t& at(int x, int y) { return pixels(y, x); }
};

bool operator==(const GrayImage& a, const GrayImage& b);

/// Object footprint raster; every value is exactly 0 or 255 (255 = positive).
struct BinaryMask {
  Grid8 pixels;

  BinaryMask() = default;
  BinaryMask(int width, int height) : pixels(Grid8::Zero(height, width)) {}

  /// Validates the {0, 255} domain; throws ValueOutOfRange otherwise.
  static BinaryMask from_grid(Grid8 grid);

  int width() const { return static_cast<int>(pixels.cols()); }
  int height() const { return static_cast<int>(pixels.rows()); }
  bool positive(int x, int y) const { return pixels(y, x) != 0; }
  void set_positive(int x, int y) { pixels(y, x) = 255; }
  long positive_count() const { return static_cast<long>((pixels != 0).count()); }
  bool empty() const { return positive_count() == 0; }
};

bool operator==(const BinaryMask& a, const BinaryMask& b);

/// Per-pixel foreground probabilities in [0, 1].
struct ProbabilityMap {
  GridF values;

  ProbabilityMap() = default;

  /// Validates the [0, 1] range; throws ValueOutOfRange otherwise.
  static ProbabilityMap from_grid(GridF grid);

  int width() const { return static_cast<int>(values.cols()); }
  int height() const { return static_cast<int>(values.rows()); }
};

/// Closed polygon with sub-pixel vertices.
struct Polygon {
  std::vector<Eigen::Vector2d> vertices;
};

}  // namespace foc
