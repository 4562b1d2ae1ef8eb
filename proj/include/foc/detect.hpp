#pragma once

#include "foc/image.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace foc {

/// One foreign-object candidate.
struct Detection {
  BoundingBox box;
  double confidence = 0.0;
  std::string class_label = "foreign_object";
};

struct DetectionFilterConfig {
  double confidence_threshold = 0.30;
  double nms_iou_threshold = 0.60;
};

/// Throws ConfigError unless both thresholds lie in (0, 1).
void validate(const DetectionFilterConfig& cfg);

/// Circle detector parameters. Emitted confidences are accumulator peak votes
/// over the theoretical maximum (the circle circumference), clamped to 1.
struct ChtConfig {
  int min_radius = 4;
  int max_radius = 16;
  double edge_magnitude_threshold = 20.0;
  double accumulator_peak_threshold = 0.5;
};

void validate(const ChtConfig& cfg);

struct ImageDetections {
  std::string image_id;
  std::vector<Detection> detections;
};

/// Reads a detection file: a JSON array of
///   {"image_id": string, "detections": [{"box": [x, y, w, h],
///    "confidence": number, "class": string}]}.
/// Image ids and record order are preserved verbatim.
std::vector<ImageDetections> load_detections(const std::filesystem::path& path);

void write_detections(const std::filesystem::path& path,
                      const std::vector<ImageDetections>& records);

/// Drops detections below the confidence threshold, then applies greedy
/// non-maximum suppression: survivors are sorted by descending confidence and
/// no surviving pair overlaps with IoU above the NMS threshold.
std::vector<Detection> filter_and_nms(std::vector<Detection> detections,
                                      const DetectionFilterConfig& cfg);

/// Classical circular Hough transform over a Sobel edge map. Each accumulator
/// peak becomes a detection whose box is the circle's tight bounding square.
std::vector<Detection> cht_detect(const GrayImage& img, const ChtConfig& cfg);

}  // namespace foc
