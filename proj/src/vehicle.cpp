#include "seagrass/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seagrass/error.hpp"

namespace seagrass {

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

VehicleState step(const VehicleState& state, const GuidanceRef& ref, double dt, const VehicleLimits& limits) {
  if (!(dt > 0.0 && dt <= 1.0)) throw InvalidParameter("dt must lie in (0, 1]");
  VehicleState next = state;

  double r = 0.0;
  if (const auto* yaw = std::get_if<YawTarget>(&ref.heading)) {
    r = limits.k_yaw * wrap_angle(yaw->yaw - state.yaw);
  } else {
    r = std::get<YawRateTarget>(ref.heading).rate;
  }
  r = std::clamp(r, -limits.max_yaw_rate, limits.max_yaw_rate);

  const double w = std::clamp(limits.k_depth * (ref.target_depth - state.z), -limits.max_heave, limits.max_heave);

  const double max_du = limits.surge_accel * dt;
  const double du = std::clamp(ref.target_surge - state.surge, -max_du, max_du);
  const double u = std::clamp(state.surge + du, -limits.max_surge, limits.max_surge);

  next.x = state.x + u * std::cos(state.yaw) * dt;
  next.y = state.y + u * std::sin(state.yaw) * dt;
  next.z = std::clamp(state.z + w * dt, 0.0, limits.seabed_depth);
  next.yaw = wrap_angle(state.yaw + r * dt);
  next.surge = u;
  next.heave = w;
  next.yaw_rate = r;
  next.time = state.time + dt;
  return next;
}

WaypointCommand waypoint_guidance(const VehicleState& state, Point2 waypoint, const CruiseConfig& cruise) {
  WaypointCommand cmd;
  const double dx = waypoint.x - state.x;
  const double dy = waypoint.y - state.y;
  cmd.ref.heading = YawTarget{std::atan2(dy, dx)};
  cmd.ref.target_depth = cruise.depth;
  cmd.ref.target_surge = cruise.speed;
  cmd.arrived = std::hypot(dx, dy) < cruise.arrival_radius;
  return cmd;
}

std::optional<BoundaryFix> boundary_guidance(const Polygon& boundary, const CameraModel& camera,
                                             const TrackingConfig& cfg) {
  const int w = camera.image_width;
  const int h = camera.image_height;
  // Outline pixels off the image border and inside the central band.
  // Doubled body coordinates relative to the image center keep every sum an
  // exact integer, so mirrored inputs give exactly negated results.
  double n = 0, sf = 0, ss = 0, sff = 0, sss = 0, sfs = 0;
  const BinaryMask outline = rasterize_outline(boundary, w, h);
  for (int v = 1; v < h - 1; ++v) {
    if (std::fabs(2.0 * v - (h - 1)) > cfg.band_fraction * h) continue;
    for (int u = 1; u < w - 1; ++u) {
      if (!outline.at(u, v)) continue;
      const double f = -(2.0 * v - (h - 1));
      const double s = 2.0 * u - (w - 1);
      n += 1;
      sf += f;
      ss += s;
      sff += f * f;
      sss += s * s;
      sfs += f * s;
    }
  }
  if (n < 2) return std::nullopt;
  const double cff = n * sff - sf * sf;
  const double css = n * sss - ss * ss;
  const double cfs = n * sfs - sf * ss;
  if (cff == 0.0 && css == 0.0) return std::nullopt;

  // Principal axis angle from image-up toward image-right, in (-pi/2, pi/2].
  double theta = 0.5 * std::atan2(2.0 * cfs, cff - css);
  const double cf = sf / n;
  const double cs = ss / n;

  // Which side of the line the meadow lies on, judged by the ring centroid.
  double af = 0, as = 0, a2 = 0;
  const std::size_t m = boundary.vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& p = boundary.vertices[i];
    const Point2& q = boundary.vertices[(i + 1) % m];
    const double pf = -(2.0 * p.y - (h - 1)), ps = 2.0 * p.x - (w - 1);
    const double qf = -(2.0 * q.y - (h - 1)), qs = 2.0 * q.x - (w - 1);
    const double cr = pf * qs - qf * ps;
    a2 += cr;
    af += (pf + qf) * cr;
    as += (ps + qs) * cr;
  }
  double mf = 0, ms = 0;
  if (a2 != 0.0) {
    mf = af / (3.0 * a2) - cf;
    ms = as / (3.0 * a2) - cs;
  } else {
    for (const Point2& p : boundary.vertices) {
      mf += -(2.0 * p.y - (h - 1));
      ms += 2.0 * p.x - (w - 1);
    }
    mf = mf / static_cast<double>(m) - cf;
    ms = ms / static_cast<double>(m) - cs;
  }
  const double df = std::cos(theta);
  const double ds = std::sin(theta);
  // Port-side normal of the direction (df, ds) in (forward, starboard) is (ds, -df).
  const double port = mf * ds - ms * df;
  const bool want_port = cfg.meadow_side == MeadowSide::Left;
  if ((want_port && port < 0.0) || (!want_port && port > 0.0)) {
    theta = theta > 0.0 ? theta - std::numbers::pi : theta + std::numbers::pi;
  }
  const double tf = std::cos(theta);
  const double ts = std::sin(theta);
  // Starboard normal of the travel direction; + when the line is to the right.
  const double offset_doubled = cs * tf - cf * ts;

  BoundaryFix fix;
  fix.tangent_angle = theta;
  fix.offset = 0.5 * offset_doubled / w;
  fix.line_point_px = {(cs + (w - 1)) / 2.0, (-cf + (h - 1)) / 2.0};
  fix.ref.heading = YawRateTarget{cfg.k_tangent * fix.tangent_angle + cfg.k_offset * fix.offset};
  fix.ref.target_depth = cfg.target_depth;
  fix.ref.target_surge = cfg.surge;
  return fix;
}

}  // namespace seagrass
