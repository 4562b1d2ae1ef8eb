#include "foc/imaging.hpp"

#include <algorithm>
#include <cmath>

namespace foc {

double box_iou(const BoundingBox& a, const BoundingBox& b) {
  if (a.area() <= 0 || b.area() <= 0) return 0.0;
  const int ix0 = std::max(a.x, b.x);
  const int iy0 = std::max(a.y, b.y);
  const int ix1 = std::min(a.x + a.w, b.x + b.w);
  const int iy1 = std::min(a.y + a.h, b.y + b.h);
  const long long iw = std::max(0, ix1 - ix0);
  const long long ih = std::max(0, iy1 - iy0);
  const long long inter = iw * ih;
  const long long uni = a.area() + b.area() - inter;
  return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

bool operator==(const GrayImage& a, const GrayImage& b) {
  return a.width() == b.width() && a.height() == b.height() &&
         (a.pixels == b.pixels).all();
}

bool operator==(const BinaryMask& a, const BinaryMask& b) {
  return a.width() == b.width() && a.height() == b.height() &&
         (a.pixels == b.pixels).all();
}

BinaryMask BinaryMask::from_grid(Grid8 grid) {
  if (!((grid == 0) || (grid == 255)).all()) {
    throw ValueOutOfRange("mask values must be exactly 0 or 255");
  }
  BinaryMask mask;
  mask.pixels = std::move(grid);
  return mask;
}

ProbabilityMap ProbabilityMap::from_grid(GridF grid) {
  if (!((grid >= 0.0) && (grid <= 1.0)).all()) {
    throw ValueOutOfRange("probability values must lie in [0, 1]");
  }
  ProbabilityMap map;
  map.values = std::move(grid);
  return map;
}

void validate(const PreprocessConfig& cfg) {
  if (cfg.target_width < 32 || cfg.target_height < 32) {
    throw ConfigError("preprocess target size must be at least 32x32");
  }
}

std::uint8_t quantize_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

GrayImage normalize_minmax(const GrayImage& img) {
  const std::uint8_t lo = img.pixels.minCoeff();
  const std::uint8_t hi = img.pixels.maxCoeff();
  if (lo == hi) return GrayImage(img.width(), img.height(), 0);
  const double scale = 255.0 / (static_cast<double>(hi) - static_cast<double>(lo));
  Grid8 out = ((img.pixels.cast<double>() - static_cast<double>(lo)) * scale + 0.5)
                  .floor()
                  .cast<std::uint8_t>();
  return GrayImage(std::move(out));
}

namespace {

// Bilinear sample with edge clamping; `fx`, `fy` are source coordinates in
// pixel units where integer positions are pixel centers.
double sample_bilinear(const Grid8& src, double fx, double fy) {
  const int w = static_cast<int>(src.cols());
  const int h = static_cast<int>(src.rows());
  const int x0 = static_cast<int>(std::floor(fx));
  const int y0 = static_cast<int>(std::floor(fy));
  const double ax = fx - x0;
  const double ay = fy - y0;
  auto clamped = [&](int x, int y) -> double {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return static_cast<double>(src(y, x));
  };
  return (1.0 - ax) * (1.0 - ay) * clamped(x0, y0) +
         ax * (1.0 - ay) * clamped(x0 + 1, y0) +
         (1.0 - ax) * ay * clamped(x0, y0 + 1) +
         ax * ay * clamped(x0 + 1, y0 + 1);
}

}  // namespace

GrayImage resize(const GrayImage& img, int target_width, int target_height) {
  if (target_width < 1 || target_height < 1) {
    throw ValueError("resize target must be at least 1x1");
  }
  if (target_width == img.width() && target_height == img.height()) return img;
  const double sx = static_cast<double>(img.width()) / target_width;
  const double sy = static_cast<double>(img.height()) / target_height;
  GrayImage out(target_width, target_height);
  for (int j = 0; j < target_height; ++j) {
    const double fy = (j + 0.5) * sy - 0.5;
    for (int i = 0; i < target_width; ++i) {
      const double fx = (i + 0.5) * sx - 0.5;
      out.pixels(j, i) = quantize_u8(sample_bilinear(img.pixels, fx, fy));
    }
  }
  return out;
}

GrayImage resize(const GrayImage& img, const PreprocessConfig& cfg) {
  return resize(img, cfg.target_width, cfg.target_height);
}

BinaryMask resize_mask(const BinaryMask& mask, int target_width, int target_height) {
  if (target_width < 1 || target_height < 1) {
    throw ValueError("resize target must be at least 1x1");
  }
  if (target_width == mask.width() && target_height == mask.height()) return mask;
  const double sx = static_cast<double>(mask.width()) / target_width;
  const double sy = static_cast<double>(mask.height()) / target_height;
  BinaryMask out(target_width, target_height);
  for (int j = 0; j < target_height; ++j) {
    const int sy_j = std::min(mask.height() - 1,
                              static_cast<int>(std::floor((j + 0.5) * sy)));
    for (int i = 0; i < target_width; ++i) {
      const int sx_i = std::min(mask.width() - 1,
                                static_cast<int>(std::floor((i + 0.5) * sx)));
      out.pixels(j, i) = mask.pixels(sy_j, sx_i);
    }
  }
  return out;
}

BinaryMask resize_mask(const BinaryMask& mask, const PreprocessConfig& cfg) {
  return resize_mask(mask, cfg.target_width, cfg.target_height);
}

namespace {

void check_box_within(const BoundingBox& box, int width, int height) {
  if (!box.fits_within(width, height)) {
    throw OutOfBounds("box exceeds image extent");
  }
}

}  // namespace

GrayImage crop_roi(const GrayImage& img, const BoundingBox& box) {
  check_box_within(box, img.width(), img.height());
  return GrayImage(Grid8(img.pixels.block(box.y, box.x, box.h, box.w)));
}

BinaryMask crop_mask(const BinaryMask& mask, const BoundingBox& box) {
  check_box_within(box, mask.width(), mask.height());
  BinaryMask out;
  out.pixels = mask.pixels.block(box.y, box.x, box.h, box.w);
  return out;
}

GrayImage merge_roi(const GrayImage& base, const GrayImage& roi, const BoundingBox& box) {
  if (roi.width() != box.w || roi.height() != box.h) {
    throw DimensionMismatch("roi dimensions do not match the box");
  }
  check_box_within(box, base.width(), base.height());
  GrayImage out = base;
  out.pixels.block(box.y, box.x, box.h, box.w) = roi.pixels;
  return out;
}

namespace {

// Even-odd point-in-polygon (crossing number) test.
bool point_in_polygon(const Polygon& poly, double px, double py) {
  bool inside = false;
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = poly.vertices[i].x(), yi = poly.vertices[i].y();
    const double xj = poly.vertices[j].x(), yj = poly.vertices[j].y();
    if ((yi > py) != (yj > py) &&
        px < (xj - xi) * (py - yi) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

}  // namespace

BinaryMask rasterize_polygon(const Polygon& poly, int width, int height) {
  if (poly.vertices.size() < 3) {
    throw DegeneratePolygon("polygon needs at least 3 vertices");
  }
  BinaryMask out(width, height);
  double min_x = poly.vertices.front().x(), max_x = min_x;
  double min_y = poly.vertices.front().y(), max_y = min_y;
  for (const auto& v : poly.vertices) {
    min_x = std::min(min_x, v.x());
    max_x = std::max(max_x, v.x());
    min_y = std::min(min_y, v.y());
    max_y = std::max(max_y, v.y());
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(max_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(max_y)));
  for (int j = y0; j <= y1; ++j) {
    for (int i = x0; i <= x1; ++i) {
      if (point_in_polygon(poly, i + 0.5, j + 0.5)) out.pixels(j, i) = 255;
    }
  }
  return out;
}

BinaryMask binarize(const ProbabilityMap& prob, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValueOutOfRange("binarize threshold must lie in (0, 1)");
  }
  BinaryMask out;
  out.pixels = (prob.values >= threshold).cast<std::uint8_t>() * std::uint8_t{255};
  return out;
}

std::optional<BoundingBox> tight_box(const BinaryMask& mask) {
  int min_x = mask.width(), max_x = -1, min_y = mask.height(), max_y = -1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.pixels(y, x) != 0) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }
    }
  }
  if (max_x < 0) return std::nullopt;
  return BoundingBox{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

}  // namespace foc
