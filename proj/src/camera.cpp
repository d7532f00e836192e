#include "seagrass/camera.hpp"

#include <cmath>
#include <numbers>

#include "seagrass/error.hpp"
#include "seagrass/vehicle.hpp"

namespace seagrass {

namespace {

double tan_half(double fov_deg) { return std::tan(fov_deg * std::numbers::pi / 360.0); }

double altitude_of(const VehicleState& pose, double seabed_depth) {
  const double h = seabed_depth - pose.z;
  if (!(h > 0.0)) throw InvalidState("camera altitude must be positive (z=" + std::to_string(pose.z) + ")");
  return h;
}

// Body offsets (forward, starboard) to the world frame.
Point2 body_to_world(double forward, double starboard, const VehicleState& pose) {
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  return {pose.x + forward * c - starboard * s, pose.y + forward * s + starboard * c};
}

}  // namespace

std::vector<std::string> CameraModel::violations() const {
  std::vector<std::string> out;
  if (!(hfov_deg > 0.0 && hfov_deg < 180.0)) out.push_back("camera.hfov: must lie in (0, 180)");
  if (!(vfov_deg > 0.0 && vfov_deg < 180.0)) out.push_back("camera.vfov: must lie in (0, 180)");
  if (image_width <= 0) out.push_back("camera.width: must be positive");
  if (image_height <= 0) out.push_back("camera.height: must be positive");
  return out;
}

FootprintExtent footprint_extent(const CameraModel& camera, double altitude) {
  return {altitude * tan_half(camera.hfov_deg), altitude * tan_half(camera.vfov_deg)};
}

Polygon footprint(const VehicleState& pose, const CameraModel& camera, double seabed_depth) {
  const FootprintExtent e = footprint_extent(camera, altitude_of(pose, seabed_depth));
  Polygon p;
  p.frame = Frame::World;
  p.vertices = {body_to_world(-e.half_forward, -e.half_lateral, pose),
                body_to_world(e.half_forward, -e.half_lateral, pose),
                body_to_world(e.half_forward, e.half_lateral, pose),
                body_to_world(-e.half_forward, e.half_lateral, pose)};
  return p;
}

Point2 pixel_to_world(Point2 pixel, const VehicleState& pose, const CameraModel& camera, double seabed_depth) {
  const FootprintExtent e = footprint_extent(camera, altitude_of(pose, seabed_depth));
  const double nu = (pixel.x + 0.5) / camera.image_width * 2.0 - 1.0;
  const double nv = (pixel.y + 0.5) / camera.image_height * 2.0 - 1.0;
  return body_to_world(-nv * e.half_forward, nu * e.half_lateral, pose);
}

Point2 world_to_pixel(Point2 world, const VehicleState& pose, const CameraModel& camera, double seabed_depth) {
  const FootprintExtent e = footprint_extent(camera, altitude_of(pose, seabed_depth));
  const double dx = world.x - pose.x;
  const double dy = world.y - pose.y;
  const double c = std::cos(pose.yaw);
  const double s = std::sin(pose.yaw);
  const double forward = dx * c + dy * s;
  const double starboard = -dx * s + dy * c;
  const double nu = starboard / e.half_lateral;
  const double nv = -forward / e.half_forward;
  return {(nu + 1.0) * 0.5 * camera.image_width - 0.5, (nv + 1.0) * 0.5 * camera.image_height - 0.5};
}

}  // namespace seagrass
