#pragma once

#include "foc/image.hpp"

#include <filesystem>
#include <vector>

namespace foc {

/// Grayscale samples straight from a PNG or PGM (P5) file, before any scaling.
struct RawGray {
  int width = 0;
  int height = 0;
  int max_value = 255;  // 255 for 8-bit, 65535 for 16-bit PNG, the declared maxval for PGM
  std::vector<std::uint16_t> samples;  // row-major
};

/// Reads a grayscale PNG or PGM file; the format is detected from the magic
/// bytes. Only 8-bit and 16-bit single-channel data is accepted.
RawGray read_gray_raw(const std::filesystem::path& path);

/// 8-bit grayscale image; throws UnsupportedBitDepth for 16-bit input.
GrayImage read_gray_image(const std::filesystem::path& path);

/// 8-bit mask whose samples must all be 0 or 255.
BinaryMask read_mask(const std::filesystem::path& path);

/// Probability map scaled to [0, 1] by dividing by the format maximum.
ProbabilityMap read_probability_map(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const GrayImage& img);
void write_png(const std::filesystem::path& path, const BinaryMask& mask);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

/// Dispatches on the file extension: .png or .pgm.
void write_gray_image(const std::filesystem::path& path, const GrayImage& img);

}  // namespace foc
