#pragma once

#include <string>
#include <vector>

#include "seagrass/geometry.hpp"

namespace seagrass {

struct VehicleState;

// Bottom-looking pinhole camera. Image up is the vehicle's forward axis and
// image right its starboard axis; hfov spans the image width.
struct CameraModel {
  double hfov_deg = 90.0;
  double vfov_deg = 90.0;
  int image_width = 64;
  int image_height = 64;

  std::vector<std::string> violations() const;
};

// Half-extents of the imaged seafloor rectangle at altitude h.
struct FootprintExtent {
  double half_lateral = 0.0;  // along starboard, from hfov
  double half_forward = 0.0;  // along forward, from vfov
};

FootprintExtent footprint_extent(const CameraModel& camera, double altitude);

// Seafloor rectangle seen from the pose (CCW ring in the world frame).
Polygon footprint(const VehicleState& pose, const CameraModel& camera, double seabed_depth);

// Pixel-index coordinates (pixel i centered at i) to the flat seafloor,
// expressed as a horizontal world point.
Point2 pixel_to_world(Point2 pixel, const VehicleState& pose, const CameraModel& camera, double seabed_depth);
Point2 world_to_pixel(Point2 world, const VehicleState& pose, const CameraModel& camera, double seabed_depth);

}  // namespace seagrass
