#pragma once

#include <string>
#include <vector>

#include "seagrass/vehicle.hpp"

namespace seagrass {

struct MissionConfig {
  double survey_depth = 2.0;
  double inspect_altitude = 5.0;
  double seabed_depth = 15.0;
  double cruise_speed = 1.0;
  double arrival_radius = 3.0;
  double depth_tolerance = 0.25;
  double presence_min_fraction = 0.05;
  int boundary_lost_limit = 80;  // consecutive frames
  double loop_close_radius = 4.0;
  double min_track_path = 30.0;
  double tick_dt = 0.5;
  double explored_alpha = 60.0;
  int trajectory_stride = 10;  // ticks between explored-map samples
  int inspect_frames = 1;      // majority vote window at INSPECT
  // Boundary following; target_depth is derived from the depths above.
  TrackingConfig tracking;

  double inspect_depth() const { return seabed_depth - inspect_altitude; }
  std::vector<std::string> violations() const;
};

}  // namespace seagrass
