#include "seagrass/darkpatch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "seagrass/error.hpp"
#include "seagrass/imaging.hpp"

namespace seagrass {

std::vector<std::string> DetectorConfig::violations() const {
  std::vector<std::string> out;
  if (!(dark_threshold_base > 0.0 && dark_threshold_base < white_threshold_base && white_threshold_base <= 1.0))
    out.push_back("detector.dark_threshold/detector.white_threshold: need 0 < dark < white <= 1");
  if (!std::isfinite(threshold_depth_gain)) out.push_back("detector.depth_gain: must be finite");
  if (!(min_patch_area >= 0.0)) out.push_back("detector.min_patch_area: must be non-negative");
  if (!(center_exclusion_fraction > 0.0 && center_exclusion_fraction < 1.0))
    out.push_back("detector.center_exclusion_fraction: must lie in (0, 1)");
  return out;
}

double DetectorConfig::white_threshold(double depth) const {
  return std::clamp(white_threshold_base + threshold_depth_gain * depth, 0.0, 1.0);
}

double DetectorConfig::dark_threshold(double depth) const {
  return std::clamp(dark_threshold_base + threshold_depth_gain * depth, 0.0, 1.0);
}

Raster remove_white_particles(const Raster& img, double white_threshold) {
  Raster out = img;
  const int w = img.width();
  const int h = img.height();
  const int nc = img.channels();
  std::vector<double> window;
  window.reserve(9);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      for (int c = 0; c < nc; ++c) v = std::max(v, img.at(x, y, c));
      if (v <= white_threshold) continue;
      for (int c = 0; c < nc; ++c) {
        window.clear();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int xx = x + dx, yy = y + dy;
            if (xx >= 0 && yy >= 0 && xx < w && yy < h) window.push_back(img.at(xx, yy, c));
          }
        auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
        std::nth_element(window.begin(), mid, window.end());
        out.set(x, y, c, *mid);
      }
    }
  }
  return out;
}

DarkPatchReport detect_dark_patches(const Raster& img, const DetectorConfig& cfg, double vehicle_depth) {
  if (img.empty()) throw InvalidInput("detect_dark_patches: empty image");
  if (!(vehicle_depth >= 0.0)) throw InvalidParameter("detect_dark_patches: depth must be non-negative");
  const int w = img.width();
  const int h = img.height();

  const Raster clean = remove_white_particles(img, cfg.white_threshold(vehicle_depth));
  std::vector<double> value(clean.pixel_count());
  if (clean.channels() == 3) {
    value = to_hsv(clean).value;
  } else {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) value[static_cast<std::size_t>(y) * w + x] = clean.at(x, y);
  }

  const double dark = cfg.dark_threshold(vehicle_depth);
  BinaryMask mask(w, h);
  for (std::size_t i = 0; i < value.size(); ++i) mask.bits[i] = value[i] < dark ? 1 : 0;

  const Labeling labeling = label_components(mask);
  std::vector<double> value_sum(labeling.components.size(), 0.0);
  for (std::size_t i = 0; i < value.size(); ++i)
    if (labeling.labels[i] > 0) value_sum[labeling.labels[i] - 1] += value[i];

  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const double half_x = cfg.center_exclusion_fraction * w;
  const double half_y = cfg.center_exclusion_fraction * h;

  DarkPatchReport report;
  for (const Component& comp : labeling.components) {
    const double area = static_cast<double>(comp.pixel_count);
    if (area < cfg.min_patch_area) continue;
    const Point2 c = comp.centroid();
    if (std::fabs(c.x - cx) <= half_x && std::fabs(c.y - cy) <= half_y) {
      ++report.excluded_count;
      continue;
    }
    DarkPatch patch;
    patch.contour = trace_component(labeling, comp.label);
    patch.centroid_px = c;
    patch.area_px = area;
    patch.mean_value = value_sum[comp.label - 1] / area;
    report.patches.push_back(std::move(patch));
  }
  return report;
}

Point2 patch_to_world(Point2 centroid_px, const VehicleState& pose, const CameraModel& camera, double seabed_depth) {
  return pixel_to_world(centroid_px, pose, camera, seabed_depth);
}

void write_report(std::ostream& out, const DarkPatchReport& report) {
  char buf[160];
  for (std::size_t i = 0; i < report.patches.size(); ++i) {
    const DarkPatch& p = report.patches[i];
    std::snprintf(buf, sizeof buf, "patch %zu centroid %.3f %.3f area %.0f mean_value %.6f\n", i, p.centroid_px.x,
                  p.centroid_px.y, p.area_px, p.mean_value);
    out << buf;
  }
}

}  // namespace seagrass
