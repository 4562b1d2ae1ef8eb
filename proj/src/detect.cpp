#include "foc/detect.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace foc {

using nlohmann::json;

void validate(const DetectionFilterConfig& cfg) {
  if (!(cfg.confidence_threshold > 0.0 && cfg.confidence_threshold < 1.0) ||
      !(cfg.nms_iou_threshold > 0.0 && cfg.nms_iou_threshold < 1.0)) {
    throw ConfigError("detection thresholds must lie in (0, 1)");
  }
}

void validate(const ChtConfig& cfg) {
  if (cfg.min_radius < 1 || cfg.min_radius > cfg.max_radius) {
    throw ConfigError("requires 1 <= min_radius <= max_radius");
  }
  if (cfg.edge_magnitude_threshold <= 0.0) {
    throw ConfigError("edge magnitude threshold must be positive");
  }
  if (!(cfg.accumulator_peak_threshold > 0.0 && cfg.accumulator_peak_threshold <= 1.0)) {
    throw ConfigError("accumulator peak threshold must lie in (0, 1]");
  }
}

namespace {

int require_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string("expected integer for ") + what);
  return v.get<int>();
}

Detection parse_detection(const json& rec) {
  if (!rec.is_object() || !rec.contains("box")) throw ParseError("detection record needs a box");
  const json& b = rec.at("box");
  if (!b.is_array() || b.size() != 4) throw ParseError("box must be [x, y, w, h]");
  Detection det;
  det.box.x = require_int(b[0], "box x");
  det.box.y = require_int(b[1], "box y");
  det.box.w = require_int(b[2], "box w");
  det.box.h = require_int(b[3], "box h");
  if (det.box.w < 1 || det.box.h < 1) throw ValueError("box size must be positive");
  if (det.box.x < 0 || det.box.y < 0) throw ValueError("box origin must be non-negative");
  if (rec.contains("confidence")) {
    if (!rec.at("confidence").is_number()) throw ParseError("confidence must be a number");
    det.confidence = rec.at("confidence").get<double>();
  } else {
    det.confidence = 1.0;
  }
  if (det.confidence < 0.0 || det.confidence > 1.0) {
    throw ValueError("confidence must lie in [0, 1]");
  }
  det.class_label = rec.value("class", std::string("foreign_object"));
  return det;
}

}  // namespace

std::vector<ImageDetections> load_detections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid detection JSON: " + std::string(e.what()));
  }
  if (!doc.is_array()) throw ParseError("detection file must be a JSON array");

  std::vector<ImageDetections> records;
  records.reserve(doc.size());
  for (const json& entry : doc) {
    if (!entry.is_object() || !entry.contains("image_id") || !entry.at("image_id").is_string()) {
      throw ParseError("detection record needs a string image_id");
    }
    ImageDetections rec;
    rec.image_id = entry.at("image_id").get<std::string>();
    const json dets = entry.value("detections", json::array());
    if (!dets.is_array()) throw ParseError("detections must be an array");
    for (const json& d : dets) rec.detections.push_back(parse_detection(d));
    records.push_back(std::move(rec));
  }
  return records;
}

void write_detections(const std::filesystem::path& path,
                      const std::vector<ImageDetections>& records) {
  json doc = json::array();
  for (const ImageDetections& rec : records) {
    json dets = json::array();
    for (const Detection& d : rec.detections) {
      dets.push_back({{"box", {d.box.x, d.box.y, d.box.w, d.box.h}},
                      {"confidence", d.confidence},
                      {"class", d.class_label}});
    }
    doc.push_back({{"image_id", rec.image_id}, {"detections", std::move(dets)}});
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << "\n";
}

std::vector<Detection> filter_and_nms(std::vector<Detection> detections,
                                      const DetectionFilterConfig& cfg) {
  std::erase_if(detections, [&](const Detection& d) {
    return d.confidence < cfg.confidence_threshold;
  });
  std::stable_sort(detections.begin(), detections.end(),
                   [](const Detection& a, const Detection& b) {
                     return a.confidence > b.confidence;
                   });
  std::vector<Detection> kept;
  for (const Detection& cand : detections) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Detection& k) {
      return box_iou(cand.box, k.box) > cfg.nms_iou_threshold;
    });
    if (!suppressed) kept.push_back(cand);
  }
  return kept;
}

namespace {

struct CircleCandidate {
  long votes = 0;
  int cx = 0;
  int cy = 0;
  int radius = 0;
};

}  // namespace

std::vector<Detection> cht_detect(const GrayImage& img, const ChtConfig& cfg) {
  validate(cfg);
  const int w = img.width();
  const int h = img.height();
  const int needed = 2 * cfg.max_radius + 1;
  if (w < needed || h < needed) {
    throw ImageTooSmall("image must be at least " + std::to_string(needed) +
                        " pixels in each dimension");
  }

  // Sobel gradients, normalized to intensity units per pixel.
  struct EdgePixel {
    int x, y;
    double ux, uy;  // unit gradient direction
  };
  std::vector<EdgePixel> edges;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const auto& p = img.pixels;
      const double gx = (p(y - 1, x + 1) + 2.0 * p(y, x + 1) + p(y + 1, x + 1) -
                         p(y - 1, x - 1) - 2.0 * p(y, x - 1) - p(y + 1, x - 1)) / 8.0;
      const double gy = (p(y + 1, x - 1) + 2.0 * p(y + 1, x) + p(y + 1, x + 1) -
                         p(y - 1, x - 1) - 2.0 * p(y - 1, x) - p(y - 1, x + 1)) / 8.0;
      const double mag = std::hypot(gx, gy);
      if (mag >= cfg.edge_magnitude_threshold) {
        edges.push_back({x, y, gx / mag, gy / mag});
      }
    }
  }
  if (edges.empty()) return {};

  const int radius_count = cfg.max_radius - cfg.min_radius + 1;
  using Accumulator = Grid<std::int32_t>;

  // Vote along the gradient direction (both signs) at every candidate radius,
  // then pool 3x3 so quantization spread still forms a single peak.
  std::vector<Accumulator> pooled(radius_count);
  for (int ri = 0; ri < radius_count; ++ri) {
    const double r = cfg.min_radius + ri;
    Accumulator acc = Accumulator::Zero(h, w);
    for (const EdgePixel& e : edges) {
      for (const double sign : {1.0, -1.0}) {
        const int cx = static_cast<int>(std::lround(e.x + sign * r * e.ux));
        const int cy = static_cast<int>(std::lround(e.y + sign * r * e.uy));
        if (cx >= 0 && cx < w && cy >= 0 && cy < h) acc(cy, cx) += 1;
      }
    }
    Accumulator pool = Accumulator::Zero(h, w);
    for (int y = 0; y < h; ++y) {
      const int y0 = std::max(0, y - 1), y1 = std::min(h - 1, y + 1);
      for (int x = 0; x < w; ++x) {
        if (acc(y, x) == 0 && pool(y, x) == 0) {
          // Pool lazily: only cells near votes can become peaks.
        }
        const int x0 = std::max(0, x - 1), x1 = std::min(w - 1, x + 1);
        std::int32_t s = 0;
        for (int yy = y0; yy <= y1; ++yy)
          for (int xx = x0; xx <= x1; ++xx) s += acc(yy, xx);
        pool(y, x) = s;
      }
    }
    pooled[ri] = std::move(pool);
  }

  // Collect cells above the vote threshold that are local maxima in the
  // 3x3x3 (x, y, radius) neighborhood.
  std::vector<CircleCandidate> candidates;
  for (int ri = 0; ri < radius_count; ++ri) {
    const int r = cfg.min_radius + ri;
    const double theoretical_max = 2.0 * std::numbers::pi * r;
    const long min_votes =
        static_cast<long>(std::ceil(cfg.accumulator_peak_threshold * theoretical_max));
    const Accumulator& plane = pooled[ri];
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::int32_t score = plane(y, x);
        if (score < min_votes) continue;
        bool is_peak = true;
        for (int dri = -1; dri <= 1 && is_peak; ++dri) {
          const int rj = ri + dri;
          if (rj < 0 || rj >= radius_count) continue;
          const Accumulator& nb = pooled[rj];
          for (int dy = -1; dy <= 1 && is_peak; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
              const int ny = y + dy, nx = x + dx;
              if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
              if (nb(ny, nx) > score) {
                is_peak = false;
                break;
              }
            }
          }
        }
        if (is_peak) candidates.push_back({score, x, y, r});
      }
    }
  }

  // Ties between equal peaks resolve to the lowest (y, x, r).
  std::sort(candidates.begin(), candidates.end(),
            [](const CircleCandidate& a, const CircleCandidate& b) {
              if (a.votes != b.votes) return a.votes > b.votes;
              if (a.cy != b.cy) return a.cy < b.cy;
              if (a.cx != b.cx) return a.cx < b.cx;
              return a.radius < b.radius;
            });

  // Non-maximum suppression in (x, y, r) space: a candidate whose center falls
  // within the larger of the two radii of a kept circle is the same object.
  std::vector<CircleCandidate> kept;
  for (const CircleCandidate& cand : candidates) {
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const CircleCandidate& k) {
      const long dx = cand.cx - k.cx;
      const long dy = cand.cy - k.cy;
      const long sep = std::max(k.radius, cand.radius);
      return dx * dx + dy * dy <= sep * sep;
    });
    if (!duplicate) kept.push_back(cand);
  }

  std::vector<Detection> detections;
  detections.reserve(kept.size());
  for (const CircleCandidate& c : kept) {
    Detection det;
    const int x0 = std::max(0, c.cx - c.radius);
    const int y0 = std::max(0, c.cy - c.radius);
    const int x1 = std::min(w - 1, c.cx + c.radius);
    const int y1 = std::min(h - 1, c.cy + c.radius);
    det.box = BoundingBox{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
    det.confidence = std::min(1.0, c.votes / (2.0 * std::numbers::pi * c.radius));
    detections.push_back(std::move(det));
  }
  return detections;
}

}  // namespace foc
