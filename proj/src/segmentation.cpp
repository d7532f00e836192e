#include "seagrass/segmentation.hpp"

#include <algorithm>
#include <cmath>

#include "seagrass/error.hpp"
#include "seagrass/imaging.hpp"
#include "seagrass/world.hpp"

namespace seagrass {

OracleSegmenter::OracleSegmenter(const Scenario& scenario, const CameraModel& camera, const VehicleState& pose)
    : scenario_(&scenario), camera_(camera), pose_(pose) {}

LabelMask OracleSegmenter::segment(const Raster& /*img*/) { return sample_labels(*scenario_, pose_, camera_); }

std::unique_ptr<OracleSegmenter> oracle_segmenter(const Scenario& scenario, const VehicleState& pose,
                                                  const CameraModel& camera) {
  return std::make_unique<OracleSegmenter>(scenario, camera, pose);
}

bool HsvRange::contains(const Hsv& p) const {
  const bool hue_ok = hue_min <= hue_max ? (p.h >= hue_min && p.h <= hue_max) : (p.h >= hue_min || p.h <= hue_max);
  return hue_ok && p.s >= sat_min && p.s <= sat_max && p.v >= val_min && p.v <= val_max;
}

BaselineConfig BaselineConfig::defaults() {
  BaselineConfig c;
  c.ranges = {
      {Label::Posidonia, 80.0, 180.0, 0.35, 1.0, 0.03, 0.65},
      {Label::Rocks, 0.0, 360.0, 0.0, 0.15, 0.12, 0.55},
      {Label::Debris, 15.0, 60.0, 0.15, 0.45, 0.30, 0.62},
  };
  return c;
}

namespace {

int priority(Label l) {
  switch (l) {
    case Label::Posidonia: return 3;
    case Label::Rocks: return 2;
    case Label::Debris: return 1;
    case Label::Background: return 0;
  }
  return 0;
}

bool intervals_overlap(double a0, double a1, double b0, double b1) { return a0 <= b1 && b0 <= a1; }

// Hue intervals as up to two plain pieces.
std::vector<std::pair<double, double>> hue_pieces(const HsvRange& r) {
  if (r.hue_min <= r.hue_max) return {{r.hue_min, r.hue_max}};
  return {{r.hue_min, 360.0}, {0.0, r.hue_max}};
}

bool ranges_overlap(const HsvRange& a, const HsvRange& b) {
  if (!intervals_overlap(a.sat_min, a.sat_max, b.sat_min, b.sat_max)) return false;
  if (!intervals_overlap(a.val_min, a.val_max, b.val_min, b.val_max)) return false;
  for (auto [a0, a1] : hue_pieces(a))
    for (auto [b0, b1] : hue_pieces(b))
      if (intervals_overlap(a0, a1, b0, b1)) return true;
  return false;
}

}  // namespace

BaselineSegmenter::BaselineSegmenter(BaselineConfig config) : config_(std::move(config)) {
  for (const HsvRange& r : config_.ranges)
    if (r.label == Label::Background) throw ConfigError("baseline range must not target background");
  if (!config_.priority_ordered) {
    for (std::size_t i = 0; i < config_.ranges.size(); ++i)
      for (std::size_t j = i + 1; j < config_.ranges.size(); ++j)
        if (config_.ranges[i].label != config_.ranges[j].label && ranges_overlap(config_.ranges[i], config_.ranges[j]))
          throw ConfigError(std::string("overlapping HSV ranges for ") + label_name(config_.ranges[i].label) +
                            " and " + label_name(config_.ranges[j].label) + " without priority ordering");
  }
}

LabelMask BaselineSegmenter::segment(const Raster& img) {
  if (img.channels() != 3) throw InvalidInput("baseline segmenter needs a 3-channel image");
  const int w = img.width();
  const int h = img.height();
  LabelMask raw(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto rgb = img.rgb(x, y);
      const Hsv p = rgb_to_hsv(rgb[0], rgb[1], rgb[2]);
      Label best = Label::Background;
      for (const HsvRange& r : config_.ranges)
        if (priority(r.label) > priority(best) && r.contains(p)) best = r.label;
      raw.set(x, y, best);
    }
  }
  if (!config_.smoothing) return raw;

  // Majority over the in-bounds 3x3 window; the center label wins ties.
  LabelMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::array<int, kLabelCount> votes{};
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx >= 0 && yy >= 0 && xx < w && yy < h) ++votes[index_of(raw.at(xx, yy))];
        }
      const Label center = raw.at(x, y);
      Label best = center;
      for (int c = 0; c < kLabelCount; ++c)
        if (votes[c] > votes[index_of(best)]) best = static_cast<Label>(c);
      out.set(x, y, best);
    }
  }
  return out;
}

std::unique_ptr<BaselineSegmenter> baseline_segmenter(BaselineConfig config) {
  return std::make_unique<BaselineSegmenter>(std::move(config));
}

SegmentationSummary summarize(const LabelMask& mask, double min_fraction) {
  SegmentationSummary s;
  std::array<std::size_t, kLabelCount> counts{};
  for (Label l : mask.labels()) ++counts[index_of(l)];
  const double n = static_cast<double>(mask.pixel_count());
  if (n == 0.0) {
    s.fractions[0] = 1.0;
    return s;
  }
  int dominant = 0;
  for (int c = 0; c < kLabelCount; ++c) {
    s.fractions[c] = static_cast<double>(counts[c]) / n;
    if (counts[c] > counts[dominant]) dominant = c;
  }
  s.dominant_class = static_cast<Label>(dominant);
  s.posidonia_present = counts[index_of(Label::Posidonia)] > 0 && s.fractions[index_of(Label::Posidonia)] >= min_fraction;
  s.rocks_present = counts[index_of(Label::Rocks)] > 0 && s.fractions[index_of(Label::Rocks)] >= min_fraction;
  return s;
}

std::vector<Polygon> meadow_boundary(const LabelMask& mask) {
  if (mask.empty()) return {};
  std::vector<Polygon> rings = trace_contours(mask.plane(Label::Posidonia));
  std::stable_sort(rings.begin(), rings.end(),
                   [](const Polygon& a, const Polygon& b) { return a.area() > b.area(); });
  return rings;
}

double iou(const LabelMask& ground_truth, const LabelMask& prediction, Label c) {
  if (ground_truth.width() != prediction.width() || ground_truth.height() != prediction.height())
    throw InvalidInput("iou: mask dimensions differ");
  std::size_t inter = 0, uni = 0;
  const auto& a = ground_truth.labels();
  const auto& b = prediction.labels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool in_a = a[i] == c;
    const bool in_b = b[i] == c;
    inter += (in_a && in_b) ? 1 : 0;
    uni += (in_a || in_b) ? 1 : 0;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double mean_iou(std::span<const std::pair<LabelMask, LabelMask>> pairs, std::span<const Label> classes) {
  if (pairs.empty()) throw InvalidInput("mean_iou: no mask pairs");
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [gt, pred] : pairs) {
    for (Label c : classes) {
      if (gt.count(c) == 0 && pred.count(c) == 0) {
        if (gt.width() != pred.width() || gt.height() != pred.height())
          throw InvalidInput("iou: mask dimensions differ");
        continue;
      }
      sum += iou(gt, pred, c);
      ++n;
    }
  }
  return n == 0 ? 1.0 : sum / static_cast<double>(n);
}

}  // namespace seagrass
