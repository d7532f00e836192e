#include "seagrass/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "seagrass/error.hpp"

namespace seagrass {

const char* state_name(MissionStateKind s) {
  switch (s) {
    case MissionStateKind::Survey: return "SURVEY";
    case MissionStateKind::Descend: return "DESCEND";
    case MissionStateKind::Inspect: return "INSPECT";
    case MissionStateKind::TrackBoundary: return "TRACK_BOUNDARY";
    case MissionStateKind::Ascend: return "ASCEND";
    case MissionStateKind::Complete: return "COMPLETE";
  }
  return "UNKNOWN";
}

const char* event_name(EventKind e) {
  switch (e) {
    case EventKind::PatchDetected: return "PATCH_DETECTED";
    case EventKind::PatchSkippedExplored: return "PATCH_SKIPPED_EXPLORED";
    case EventKind::DescendStart: return "DESCEND_START";
    case EventKind::PosidoniaFound: return "POSIDONIA_FOUND";
    case EventKind::RocksOnly: return "ROCKS_ONLY";
    case EventKind::TrackStart: return "TRACK_START";
    case EventKind::TrackClosed: return "TRACK_CLOSED";
    case EventKind::TrackLost: return "TRACK_LOST";
    case EventKind::AscendStart: return "ASCEND_START";
    case EventKind::WaypointReached: return "WAYPOINT_REACHED";
    case EventKind::MissionComplete: return "MISSION_COMPLETE";
  }
  return "UNKNOWN";
}

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

bool boxes_overlap(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return a[0] <= b[2] && b[0] <= a[2] && a[1] <= b[3] && b[1] <= a[3];
}

}  // namespace

MissionMachine::MissionMachine(const MissionConfig& config, const CameraModel& camera, const DetectorConfig& detector,
                               const std::vector<Point2>& waypoints, SegmenterBackend& backend)
    : config_(config),
      camera_(camera),
      detector_(detector),
      waypoints_(&waypoints),
      backend_(&backend),
      explored_(config.explored_alpha) {
  config_.tracking.target_depth = config_.inspect_depth();
  if (auto v = config_.violations(); !v.empty()) throw ValidationError(std::move(v));
}

bool MissionMachine::needs_frame() const {
  return state_.kind == MissionStateKind::Survey || state_.kind == MissionStateKind::Inspect ||
         state_.kind == MissionStateKind::TrackBoundary;
}

void MissionMachine::set_explored(ExploredMap map) {
  explored_ = std::move(map);
  acknowledged_.clear();
}

void MissionMachine::emit(TickOutput& out, const VehicleState& v, EventKind kind, std::string detail) {
  out.events.push_back({v.time, kind, v.position(), std::move(detail)});
}

GuidanceRef MissionMachine::hold_position(const VehicleState& /*v*/, double depth) const {
  GuidanceRef r;
  r.heading = YawRateTarget{0.0};
  r.target_depth = depth;
  r.target_surge = 0.0;
  return r;
}

TickOutput MissionMachine::run_tick(const VehicleState& vehicle, const Raster& frame) {
  TickOutput out;
  out.ref = hold_position(vehicle, vehicle.z);
  switch (state_.kind) {
    case MissionStateKind::Survey: survey(vehicle, frame, out); break;
    case MissionStateKind::Descend: descend(vehicle, out); break;
    case MissionStateKind::Inspect: inspect(vehicle, frame, out); break;
    case MissionStateKind::TrackBoundary: track(vehicle, frame, out); break;
    case MissionStateKind::Ascend: ascend(vehicle, out); break;
    case MissionStateKind::Complete: break;
  }
  ++tick_;
  return out;
}

void MissionMachine::survey(const VehicleState& v, const Raster& frame, TickOutput& out) {
  const auto& wps = *waypoints_;
  if (state_.waypoint_index >= wps.size()) {
    emit(out, v, EventKind::MissionComplete);
    state_.kind = MissionStateKind::Complete;
    return;
  }
  const CruiseConfig cruise{config_.cruise_speed, config_.survey_depth, config_.arrival_radius};
  const WaypointCommand cmd = waypoint_guidance(v, wps[state_.waypoint_index], cruise);
  out.ref = cmd.ref;

  if (!frame.empty()) {
    const DarkPatchReport report = detect_dark_patches(frame, detector_, v.z);
    for (const DarkPatch& patch : report.patches) {
      const Point2 world = patch_to_world(patch.centroid_px, v, camera_, config_.seabed_depth);
      const int k = containing_polygon(world, explored_.polygons());
      if (k >= 0) {
        if (acknowledged_.insert(k).second)
          emit(out, v, EventKind::PatchSkippedExplored, fmt("target=%.3f,%.3f", world.x, world.y));
        continue;
      }
      emit(out, v, EventKind::PatchDetected, fmt("target=%.3f,%.3f", world.x, world.y) + fmt(" area_px=%.0f", patch.area_px));
      emit(out, v, EventKind::DescendStart, fmt("target=%.3f,%.3f", world.x, world.y));
      state_.kind = MissionStateKind::Descend;
      state_.descent_target = world;
      dive_samples_.clear();
      dive_samples_.push_back(v.position());
      descend(v, out);
      return;
    }
    // A polygon becomes reportable again once it has left the camera view.
    const auto view = footprint(v, camera_, config_.seabed_depth).bounds();
    for (auto it = acknowledged_.begin(); it != acknowledged_.end();) {
      const int k = *it;
      if (k >= static_cast<int>(explored_.polygons().size()) || !boxes_overlap(view, explored_.polygons()[k].bounds()))
        it = acknowledged_.erase(it);
      else
        ++it;
    }
  }

  if (cmd.arrived) {
    emit(out, v, EventKind::WaypointReached, "index=" + std::to_string(state_.waypoint_index));
    ++state_.waypoint_index;
    if (state_.waypoint_index >= wps.size()) {
      emit(out, v, EventKind::MissionComplete);
      state_.kind = MissionStateKind::Complete;
      out.ref = hold_position(v, v.z);
    }
  }
}

void MissionMachine::sample_trajectory(const VehicleState& v) {
  if (tick_ % config_.trajectory_stride != 0) return;
  if (state_.kind == MissionStateKind::Descend) dive_samples_.push_back(v.position());
  if (state_.kind == MissionStateKind::TrackBoundary) track_samples_.push_back(v.position());
}

void MissionMachine::descend(const VehicleState& v, TickOutput& out) {
  sample_trajectory(v);
  const double depth = config_.inspect_depth();
  const CruiseConfig cruise{config_.cruise_speed, depth, config_.arrival_radius};
  const WaypointCommand cmd = waypoint_guidance(v, state_.descent_target, cruise);
  out.ref = cmd.arrived ? hold_position(v, depth) : cmd.ref;
  if (cmd.arrived && std::fabs(v.z - depth) < config_.depth_tolerance) {
    state_.kind = MissionStateKind::Inspect;
    state_.inspect_frames_seen = 0;
    state_.inspect_posidonia_votes = 0;
  }
}

void MissionMachine::record_dive(bool include_tracking) {
  // Surface points: the area the survey camera saw around the dive point,
  // the descent track and, after tracking, the tracked path.
  std::vector<Point2> pts = footprint(VehicleState{dive_bottom_.x, dive_bottom_.y, config_.survey_depth, 0.0},
                                      camera_, config_.seabed_depth)
                                .vertices;
  pts.insert(pts.end(), dive_samples_.begin(), dive_samples_.end());
  if (include_tracking) pts.insert(pts.end(), track_samples_.begin(), track_samples_.end());
  explored_.record(pts, dive_bottom_);
  acknowledged_.clear();
  if (const int k = containing_polygon(dive_bottom_, explored_.polygons()); k >= 0) acknowledged_.insert(k);
}

void MissionMachine::start_ascent(const VehicleState& v, TickOutput& out) {
  emit(out, v, EventKind::AscendStart);
  state_.kind = MissionStateKind::Ascend;
  out.ref = hold_position(v, config_.survey_depth);
}

void MissionMachine::inspect(const VehicleState& v, const Raster& frame, TickOutput& out) {
  out.ref = hold_position(v, config_.inspect_depth());
  SegmentationSummary summary;
  try {
    backend_->observe_pose(v);
    summary = summarize(backend_->segment(frame), config_.presence_min_fraction);
  } catch (const std::exception& e) {
    dive_bottom_ = v.position();
    record_dive(false);
    emit(out, v, EventKind::RocksOnly, std::string("backend_error=") + e.what());
    start_ascent(v, out);
    return;
  }
  ++state_.inspect_frames_seen;
  if (summary.posidonia_present) ++state_.inspect_posidonia_votes;
  if (state_.inspect_frames_seen < config_.inspect_frames) return;

  const bool posidonia = 2 * state_.inspect_posidonia_votes > state_.inspect_frames_seen;
  dive_bottom_ = v.position();
  record_dive(false);
  const std::string fractions = fmt("posidonia=%.3f", summary.fractions[index_of(Label::Posidonia)]) +
                                fmt(" rocks=%.3f", summary.fractions[index_of(Label::Rocks)]);
  if (posidonia) {
    emit(out, v, EventKind::PosidoniaFound, fractions);
    state_.kind = MissionStateKind::TrackBoundary;
    state_.tracking_anchored = false;
    state_.track_path = 0.0;
    state_.lost_count = 0;
    track_samples_.clear();
    boundary_points_.clear();
  } else {
    emit(out, v, EventKind::RocksOnly, (summary.rocks_present ? "" : "barren ") + fractions);
    start_ascent(v, out);
  }
}

void MissionMachine::track(const VehicleState& v, const Raster& frame, TickOutput& out) {
  sample_trajectory(v);
  std::optional<BoundaryFix> fix;
  try {
    backend_->observe_pose(v);
    const std::vector<Polygon> rings = meadow_boundary(backend_->segment(frame));
    if (!rings.empty()) fix = boundary_guidance(rings.front(), camera_, config_.tracking);
  } catch (const std::exception& e) {
    record_dive(true);
    emit(out, v, EventKind::TrackLost, std::string("backend_error=") + e.what());
    start_ascent(v, out);
    return;
  }

  if (fix) {
    state_.lost_count = 0;
    out.ref = fix->ref;
    boundary_points_.push_back(pixel_to_world(fix->line_point_px, v, camera_, config_.seabed_depth));
    if (!state_.tracking_anchored) {
      state_.tracking_anchored = true;
      state_.track_start = v.position();
      state_.last_track_position = v.position();
      state_.track_path = 0.0;
      emit(out, v, EventKind::TrackStart);
    }
  } else {
    ++state_.lost_count;
    out.ref.heading = YawRateTarget{0.0};
    out.ref.target_depth = config_.inspect_depth();
    out.ref.target_surge = config_.tracking.surge;
    if (state_.lost_count >= config_.boundary_lost_limit) {
      record_dive(true);
      emit(out, v, EventKind::TrackLost, "lost_frames=" + std::to_string(state_.lost_count));
      start_ascent(v, out);
      return;
    }
  }

  if (!state_.tracking_anchored) return;
  state_.track_path += distance(v.position(), state_.last_track_position);
  state_.last_track_position = v.position();
  if (state_.track_path >= config_.min_track_path &&
      distance(v.position(), state_.track_start) < config_.loop_close_radius) {
    if (boundary_points_.size() >= 3) {
      Polygon ring{boundary_points_, Frame::World};
      if (ring.signed_area() < 0.0) std::reverse(ring.vertices.begin(), ring.vertices.end());
      boundaries_.push_back(std::move(ring));
    }
    record_dive(true);
    emit(out, v, EventKind::TrackClosed, fmt("path=%.3f", state_.track_path));
    start_ascent(v, out);
  }
}

void MissionMachine::ascend(const VehicleState& v, TickOutput& out) {
  out.ref = hold_position(v, config_.survey_depth);
  if (std::fabs(v.z - config_.survey_depth) < config_.depth_tolerance) state_.kind = MissionStateKind::Survey;
}

std::size_t MissionLog::count(EventKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [&](const MissionEvent& e) { return e.kind == kind; }));
}

MissionLog run_mission(const Scenario& scenario, SegmenterBackend& backend, long long max_ticks) {
  if (max_ticks <= 0) throw InvalidParameter("run_mission: max_ticks must be positive");
  if (auto v = validate(scenario); !v.empty()) throw ValidationError(std::move(v));
  const MissionConfig& cfg = scenario.mission;
  const VehicleLimits limits = scenario.limits();
  MissionMachine machine(cfg, scenario.camera, scenario.detector, scenario.waypoints, backend);

  VehicleState vehicle;
  const Point2 start = scenario.start_position();
  vehicle.x = start.x;
  vehicle.y = start.y;
  vehicle.z = cfg.survey_depth;
  if (!scenario.waypoints.empty()) {
    const Point2 wp = scenario.waypoints.front();
    if (wp != start) vehicle.yaw = std::atan2(wp.y - start.y, wp.x - start.x);
  }

  MissionLog log;
  const Raster no_frame;
  for (long long tick = 0; tick < max_ticks; ++tick) {
    const Raster frame = machine.needs_frame() ? render(scenario, vehicle, scenario.camera).image : no_frame;
    const TickOutput out = machine.run_tick(vehicle, frame);
    log.rows.push_back({vehicle.time, vehicle.x, vehicle.y, vehicle.z, vehicle.yaw, machine.state().kind, std::nullopt});
    for (const MissionEvent& e : out.events) {
      log.rows.push_back({vehicle.time, vehicle.x, vehicle.y, vehicle.z, vehicle.yaw, machine.state().kind, e.kind});
      log.events.push_back(e);
    }
    log.ticks = tick + 1;
    if (machine.complete()) break;
    vehicle = step(vehicle, out.ref, cfg.tick_dt, limits);
  }
  log.complete = machine.complete();
  log.explored = machine.explored().polygons();
  log.explored_points = machine.explored().points();
  log.boundaries = machine.boundaries();
  return log;
}

void write_trajectory_csv(std::ostream& out, const MissionLog& log) {
  out << "t,x,y,z,yaw,state,event\n";
  char buf[160];
  for (const TrajectoryRow& r : log.rows) {
    std::snprintf(buf, sizeof buf, "%.3f,%.4f,%.4f,%.4f,%.6f,%s,%s\n", r.t, r.x, r.y, r.z, r.yaw, state_name(r.state),
                  r.event ? event_name(*r.event) : "");
    out << buf;
  }
}

void write_events(std::ostream& out, const MissionLog& log) {
  char buf[128];
  for (const MissionEvent& e : log.events) {
    std::snprintf(buf, sizeof buf, "%.3f %s %.3f %.3f ", e.time, event_name(e.kind), e.position.x, e.position.y);
    out << buf << (e.detail.empty() ? "-" : e.detail) << '\n';
  }
}

void write_polygons(std::ostream& out, const MissionLog& log) {
  out << "# explored\n";
  write_rings(out, log.explored);
  out << "# meadow-boundaries\n";
  write_rings(out, log.boundaries);
}

Raster render_map(const Scenario& scenario, const MissionLog& log, int max_size) {
  const Seafloor& sf = scenario.seafloor;
  const int cw = sf.label_map.width();
  const int ch = sf.label_map.height();
  const double scale = std::min(1.0, static_cast<double>(max_size) / std::max(cw, ch));
  const int w = std::max(1, static_cast<int>(std::lround(cw * scale)));
  const int h = std::max(1, static_cast<int>(std::lround(ch * scale)));
  Raster map(w, h, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int i = std::min(cw - 1, static_cast<int>((x + 0.5) / scale));
      const int j = std::min(ch - 1, static_cast<int>((y + 0.5) / scale));
      map.set_rgb(x, y, sf.texture.colors[index_of(sf.label_map.at(i, j))]);
    }
  auto to_px = [&](Point2 p) {
    return Point2{(p.x - sf.origin.x) / sf.resolution * scale - 0.5, (p.y - sf.origin.y) / sf.resolution * scale - 0.5};
  };
  auto draw = [&](const Polygon& poly, const Rgb& color) {
    Polygon px{{}, Frame::Pixel};
    for (const Point2& p : poly.vertices) px.vertices.push_back(to_px(p));
    const BinaryMask m = rasterize_outline(px, w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (m.at(x, y)) map.set_rgb(x, y, color);
  };
  for (const Polygon& p : log.explored) draw(p, {0.1, 0.3, 1.0});
  for (const Polygon& p : log.boundaries) draw(p, {1.0, 0.9, 0.0});
  for (const TrajectoryRow& r : log.rows) {
    const Point2 p = to_px({r.x, r.y});
    const int x = static_cast<int>(std::lround(p.x));
    const int y = static_cast<int>(std::lround(p.y));
    if (x >= 0 && y >= 0 && x < w && y < h) map.set_rgb(x, y, {0.9, 0.1, 0.1});
  }
  for (const MissionEvent& e : log.events) {
    if (e.kind != EventKind::DescendStart) continue;
    const Point2 p = to_px(e.position);
    for (int d = -3; d <= 3; ++d) {
      const int x = static_cast<int>(std::lround(p.x)), y = static_cast<int>(std::lround(p.y));
      if (x + d >= 0 && x + d < w && y >= 0 && y < h) map.set_rgb(x + d, y, {1.0, 0.0, 1.0});
      if (y + d >= 0 && y + d < h && x >= 0 && x < w) map.set_rgb(x, y + d, {1.0, 0.0, 1.0});
    }
  }
  return map;
}

}  // namespace seagrass
