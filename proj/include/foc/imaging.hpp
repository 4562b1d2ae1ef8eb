#pragma once

#include "foc/image.hpp"

#include <cstdint>
#include <optional>

namespace foc {

/// Target size for the pre-processing stage.
struct PreprocessConfig {
  int target_width = 512;
  int target_height = 512;
};

/// Throws ConfigError unless both targets are at least 32 pixels.
void validate(const PreprocessConfig& cfg);

/// Round-half-up quantization clamped to [0, 255].
std::uint8_t quantize_u8(double v);

/// Affine min/max stretch to the full [0, 255] range. A constant image maps
/// to all zeros.
GrayImage normalize_minmax(const GrayImage& img);

/// Bilinear resampling at output-pixel centers.
GrayImage resize(const GrayImage& img, int target_width, int target_height);
GrayImage resize(const GrayImage& img, const PreprocessConfig& cfg);

/// Nearest-neighbor resampling; preserves the {0, 255} domain.
BinaryMask resize_mask(const BinaryMask& mask, int target_width, int target_height);
BinaryMask resize_mask(const BinaryMask& mask, const PreprocessConfig& cfg);

GrayImage crop_roi(const GrayImage& img, const BoundingBox& box);
BinaryMask crop_mask(const BinaryMask& mask, const BoundingBox& box);

/// Copy of `base` with `roi` written into `box`; pixels outside the box are
/// bit-identical to `base`.
GrayImage merge_roi(const GrayImage& base, const GrayImage& roi, const BoundingBox& box);

/// Pixel (i, j) is positive iff its center (i+0.5, j+0.5) lies inside the
/// polygon under the even-odd rule.
BinaryMask rasterize_polygon(const Polygon& poly, int width, int height);

/// Pixel positive iff its probability is >= threshold; threshold must lie in (0, 1).
BinaryMask binarize(const ProbabilityMap& prob, double threshold);

/// Tight bounding box of the positive pixels; nullopt for an empty mask.
std::optional<BoundingBox> tight_box(const BinaryMask& mask);

}  // namespace foc
