#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seagrass/camera.hpp"
#include "seagrass/geometry.hpp"
#include "seagrass/raster.hpp"
#include "seagrass/vehicle.hpp"

namespace seagrass {

struct DetectorConfig {
  double white_threshold_base = 0.9;
  double dark_threshold_base = 0.2;
  double threshold_depth_gain = 0.0;  // per meter, applied to both thresholds
  double min_patch_area = 40.0;       // pixels
  double center_exclusion_fraction = 0.1;

  std::vector<std::string> violations() const;
  double white_threshold(double depth) const;
  double dark_threshold(double depth) const;
};

struct DarkPatch {
  Polygon contour;  // pixel frame
  Point2 centroid_px;
  double area_px = 0.0;
  double mean_value = 0.0;
};

struct DarkPatchReport {
  std::vector<DarkPatch> patches;
  int excluded_count = 0;
};

// Speckle clamp, HSV value threshold, 8-connected blobs, area filter and
// central exclusion box, in that order. Area and centroid come from the
// blob's pixel count and pixel mean.
DarkPatchReport detect_dark_patches(const Raster& img, const DetectorConfig& cfg, double vehicle_depth);

// Pixels whose value exceeds the threshold are replaced, per channel, by the
// median of their 3x3 neighborhood.
Raster remove_white_particles(const Raster& img, double white_threshold);

Point2 patch_to_world(Point2 centroid_px, const VehicleState& pose, const CameraModel& camera, double seabed_depth);

// One "patch <id> centroid <x> <y> area <px> mean_value <v>" line per patch.
void write_report(std::ostream& out, const DarkPatchReport& report);

}  // namespace seagrass
