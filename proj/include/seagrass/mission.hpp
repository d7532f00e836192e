#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seagrass/camera.hpp"
#include "seagrass/darkpatch.hpp"
#include "seagrass/geometry.hpp"
#include "seagrass/mission_config.hpp"
#include "seagrass/raster.hpp"
#include "seagrass/segmentation.hpp"
#include "seagrass/vehicle.hpp"
#include "seagrass/world.hpp"

namespace seagrass {

enum class MissionStateKind { Survey, Descend, Inspect, TrackBoundary, Ascend, Complete };

enum class EventKind {
  PatchDetected,
  PatchSkippedExplored,
  DescendStart,
  PosidoniaFound,
  RocksOnly,
  TrackStart,
  TrackClosed,
  TrackLost,
  AscendStart,
  WaypointReached,
  MissionComplete,
};

const char* state_name(MissionStateKind s);
const char* event_name(EventKind e);

struct MissionEvent {
  double time = 0.0;
  EventKind kind = EventKind::WaypointReached;
  Point2 position;
  std::string detail;

  bool operator==(const MissionEvent&) const = default;
};

struct MissionState {
  MissionStateKind kind = MissionStateKind::Survey;
  std::size_t waypoint_index = 0;
  Point2 descent_target;
  // Tracking payload; the anchor is set when the boundary is first acquired.
  bool tracking_anchored = false;
  Point2 track_start;
  Point2 last_track_position;
  double track_path = 0.0;
  int lost_count = 0;
  // INSPECT vote tally.
  int inspect_frames_seen = 0;
  int inspect_posidonia_votes = 0;
};

struct TickOutput {
  GuidanceRef ref;
  std::vector<MissionEvent> events;
};

// The inspection state machine. Holds references to the waypoints and the
// backend; both must outlive it.
class MissionMachine {
 public:
  MissionMachine(const MissionConfig& config, const CameraModel& camera, const DetectorConfig& detector,
                 const std::vector<Point2>& waypoints, SegmenterBackend& backend);

  const MissionState& state() const { return state_; }
  const ExploredMap& explored() const { return explored_; }
  const std::vector<Polygon>& boundaries() const { return boundaries_; }
  bool complete() const { return state_.kind == MissionStateKind::Complete; }
  // DESCEND and ASCEND do not look at the frame; callers may pass an empty one.
  bool needs_frame() const;
  // Replaces the explored map, e.g. to resume from an earlier survey.
  void set_explored(ExploredMap map);

  TickOutput run_tick(const VehicleState& vehicle, const Raster& frame);

 private:
  void emit(TickOutput& out, const VehicleState& v, EventKind kind, std::string detail = {});
  void survey(const VehicleState& v, const Raster& frame, TickOutput& out);
  void descend(const VehicleState& v, TickOutput& out);
  void inspect(const VehicleState& v, const Raster& frame, TickOutput& out);
  void track(const VehicleState& v, const Raster& frame, TickOutput& out);
  void ascend(const VehicleState& v, TickOutput& out);
  void start_ascent(const VehicleState& v, TickOutput& out);
  void record_dive(bool include_tracking);
  void sample_trajectory(const VehicleState& v);
  GuidanceRef hold_position(const VehicleState& v, double depth) const;

  MissionConfig config_;
  CameraModel camera_;
  DetectorConfig detector_;
  const std::vector<Point2>* waypoints_;
  SegmenterBackend* backend_;
  MissionState state_;
  ExploredMap explored_;
  std::set<int> acknowledged_;  // explored polygons already reported this sighting
  std::vector<Polygon> boundaries_;
  std::vector<Point2> dive_samples_;
  std::vector<Point2> track_samples_;
  std::vector<Point2> boundary_points_;
  Point2 dive_bottom_;
  long long tick_ = 0;
};

struct TrajectoryRow {
  double t = 0, x = 0, y = 0, z = 0, yaw = 0;
  MissionStateKind state = MissionStateKind::Survey;
  std::optional<EventKind> event;

  bool operator==(const TrajectoryRow&) const = default;
};

struct MissionLog {
  std::vector<TrajectoryRow> rows;
  std::vector<MissionEvent> events;
  std::vector<Polygon> explored;
  std::vector<Polygon> boundaries;
  std::vector<Point2> explored_points;
  bool complete = false;
  long long ticks = 0;

  std::size_t count(EventKind kind) const;
};

MissionLog run_mission(const Scenario& scenario, SegmenterBackend& backend, long long max_ticks);

// Exports: trajectory CSV, events text, ring polygons, top-down map raster.
void write_trajectory_csv(std::ostream& out, const MissionLog& log);
void write_events(std::ostream& out, const MissionLog& log);
void write_polygons(std::ostream& out, const MissionLog& log);
Raster render_map(const Scenario& scenario, const MissionLog& log, int max_size = 800);

}  // namespace seagrass
