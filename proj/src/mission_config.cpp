#include "seagrass/mission_config.hpp"

#include <cmath>

namespace seagrass {

std::vector<std::string> MissionConfig::violations() const {
  std::vector<std::string> out;
  auto positive = [&](double v, const char* path) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back(std::string(path) + ": must be positive");
  };
  if (!(seabed_depth > 0.0)) out.push_back("mission.seabed_depth: must be positive");
  if (!(survey_depth >= 0.0 && survey_depth < seabed_depth))
    out.push_back("mission.survey_depth/mission.seabed_depth: need 0 <= survey_depth < seabed_depth");
  if (!(inspect_altitude > 0.0 && inspect_altitude < seabed_depth))
    out.push_back("mission.inspect_altitude/mission.seabed_depth: need 0 < inspect_altitude < seabed_depth");
  positive(cruise_speed, "mission.cruise_speed");
  positive(arrival_radius, "mission.arrival_radius");
  positive(depth_tolerance, "mission.depth_tolerance");
  if (!(presence_min_fraction >= 0.0 && presence_min_fraction <= 1.0))
    out.push_back("mission.presence_min_fraction: must lie in [0, 1]");
  if (boundary_lost_limit <= 0) out.push_back("mission.boundary_lost_limit: must be positive");
  positive(loop_close_radius, "mission.loop_close_radius");
  positive(min_track_path, "mission.min_track_path");
  if (!(tick_dt > 0.0 && tick_dt <= 1.0)) out.push_back("mission.tick_dt: must lie in (0, 1]");
  positive(explored_alpha, "mission.explored_alpha");
  if (trajectory_stride <= 0) out.push_back("mission.trajectory_stride: must be positive");
  if (inspect_frames <= 0) out.push_back("mission.inspect_frames: must be positive");
  positive(tracking.surge, "mission.track_surge");
  if (!(tracking.k_tangent > 0.0)) out.push_back("mission.k_tangent: must be positive");
  if (!(tracking.k_offset > 0.0)) out.push_back("mission.k_offset: must be positive");
  if (!(tracking.band_fraction > 0.0 && tracking.band_fraction <= 1.0))
    out.push_back("mission.band_fraction: must lie in (0, 1]");
  return out;
}

}  // namespace seagrass
