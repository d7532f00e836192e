#pragma once

#include <optional>
#include <variant>

#include "seagrass/camera.hpp"
#include "seagrass/geometry.hpp"

namespace seagrass {

// World frame: x, y horizontal, z depth (positive down); yaw turns +x toward +y.
// Body frame: forward along the heading, starboard 90 degrees clockwise of it.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double yaw = 0.0;  // (-pi, pi]
  double surge = 0.0;
  double heave = 0.0;
  double yaw_rate = 0.0;
  double time = 0.0;

  Point2 position() const { return {x, y}; }
  bool operator==(const VehicleState&) const = default;
};

struct YawTarget {
  double yaw = 0.0;
};
struct YawRateTarget {
  double rate = 0.0;
};

struct GuidanceRef {
  std::variant<YawTarget, YawRateTarget> heading = YawRateTarget{};
  double target_depth = 0.0;
  double target_surge = 0.0;
};

struct VehicleLimits {
  double max_surge = 1.5;     // m/s
  double max_heave = 0.5;     // m/s
  double max_yaw_rate = 0.4;  // rad/s
  double surge_accel = 0.3;   // m/s^2
  double k_yaw = 0.8;         // 1/s
  double k_depth = 0.5;       // 1/s
  double seabed_depth = 15.0;
};

double wrap_angle(double a);

// First-order kinematic response plus Euler integration.
VehicleState step(const VehicleState& state, const GuidanceRef& ref, double dt, const VehicleLimits& limits);

struct CruiseConfig {
  double speed = 1.0;
  double depth = 2.0;
  double arrival_radius = 3.0;
};

struct WaypointCommand {
  GuidanceRef ref;
  bool arrived = false;
};

WaypointCommand waypoint_guidance(const VehicleState& state, Point2 waypoint, const CruiseConfig& cruise);

enum class MeadowSide { Left, Right };

struct TrackingConfig {
  double k_tangent = 0.6;    // rad/s per rad
  double k_offset = 1.2;     // rad/s per image width
  double band_fraction = 0.4;  // central band height as a fraction of the image
  MeadowSide meadow_side = MeadowSide::Left;
  double surge = 0.5;
  double target_depth = 10.0;
};

struct BoundaryFix {
  GuidanceRef ref;
  double tangent_angle = 0.0;  // radians from image-up toward image-right
  double offset = 0.0;         // line offset from image center, image widths, + = right
  Point2 line_point_px;        // fitted line center, pixel-index frame
};

// Fits a line to the meadow contour pixels in the central image band and
// turns toward it. nullopt signals a lost boundary.
std::optional<BoundaryFix> boundary_guidance(const Polygon& boundary, const CameraModel& camera,
                                             const TrackingConfig& cfg);

}  // namespace seagrass
