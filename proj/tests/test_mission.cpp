#include <cmath>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "seagrass/error.hpp"
#include "seagrass/mission.hpp"

namespace seagrass {
namespace {

class FixedBackend : public SegmenterBackend {
 public:
  explicit FixedBackend(Label fill, bool fail = false) : fill_(fill), fail_(fail) {}
  LabelMask segment(const Raster& img) override {
    if (fail_) throw std::runtime_error("model unavailable");
    return LabelMask(img.width(), img.height(), fill_);
  }

 private:
  Label fill_;
  bool fail_;
};

Raster bright_frame() { return Raster(64, 64, 3, 0.8); }

Raster frame_with_disk(double cx, double cy, double r) {
  Raster img = bright_frame();
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) img.set_rgb(x, y, {0.05, 0.05, 0.05});
  return img;
}

struct Fixture {
  MissionConfig config;
  CameraModel camera{90, 90, 64, 64};
  DetectorConfig detector;
  std::vector<Point2> waypoints{{100, 0}, {100, 100}};
};

TEST(MissionMachineTest, SurveyWithoutDarkPixelsFollowsWaypoint) {
  Fixture f;
  FixedBackend backend(Label::Rocks);
  MissionMachine m(f.config, f.camera, f.detector, f.waypoints, backend);
  const VehicleState v{0, 0, f.config.survey_depth, 0};
  const TickOutput out = m.run_tick(v, bright_frame());
  EXPECT_EQ(m.state().kind, MissionStateKind::Survey);
  EXPECT_TRUE(out.events.empty());
  EXPECT_EQ(std::get<YawTarget>(out.ref.heading).yaw, 0.0);
  EXPECT_EQ(out.ref.target_depth, f.config.survey_depth);
  EXPECT_EQ(out.ref.target_surge, f.config.cruise_speed);
}

TEST(MissionMachineTest, WaypointsAdvanceThenComplete) {
  Fixture f;
  FixedBackend backend(Label::Rocks);
  MissionMachine m(f.config, f.camera, f.detector, f.waypoints, backend);
  TickOutput a = m.run_tick({99, 0, 2, 0}, bright_frame());
  ASSERT_EQ(a.events.size(), 1u);
  EXPECT_EQ(a.events[0].kind, EventKind::WaypointReached);
  EXPECT_EQ(m.state().waypoint_index, 1u);
  TickOutput b = m.run_tick({100, 99, 2, 0}, bright_frame());
  ASSERT_EQ(b.events.size(), 2u);
  EXPECT_EQ(b.events[1].kind, EventKind::MissionComplete);
  EXPECT_TRUE(m.complete());
  const TickOutput c = m.run_tick({100, 99, 2, 0}, bright_frame());
  EXPECT_TRUE(c.events.empty());
  EXPECT_EQ(c.ref.target_surge, 0.0);
}

TEST(MissionMachineTest, PatchInsideExploredIsSkippedOnce) {
  Fixture f;
  FixedBackend backend(Label::Rocks);
  MissionMachine m(f.config, f.camera, f.detector, f.waypoints, backend);
  ExploredMap map(f.config.explored_alpha);
  const Point2 sq[] = {{-20, -20}, {20, -20}, {20, 20}, {-20, 20}};
  map.record(sq, {0, 0});
  m.set_explored(map);
  const VehicleState v{0, 0, 2, 0};
  const Raster frame = frame_with_disk(32, 10, 6);  // ahead of the vehicle
  const TickOutput a = m.run_tick(v, frame);
  ASSERT_EQ(a.events.size(), 1u);
  EXPECT_EQ(a.events[0].kind, EventKind::PatchSkippedExplored);
  EXPECT_EQ(m.state().kind, MissionStateKind::Survey);
  EXPECT_TRUE(m.run_tick(v, frame).events.empty());
}

TEST(MissionMachineTest, RocksOnlyInspectionAscends) {
  Fixture f;
  FixedBackend backend(Label::Rocks);
  MissionMachine m(f.config, f.camera, f.detector, f.waypoints, backend);
  VehicleState v{0, 0, 2, 0};
  const TickOutput a = m.run_tick(v, frame_with_disk(32, 10, 6));
  ASSERT_EQ(a.events.size(), 2u);
  EXPECT_EQ(a.events[0].kind, EventKind::PatchDetected);
  EXPECT_EQ(a.events[1].kind, EventKind::DescendStart);
  EXPECT_EQ(m.state().kind, MissionStateKind::Descend);
  const Point2 target = m.state().descent_target;
  EXPECT_GT(target.x, 0.0);

  v = {target.x, target.y, f.config.inspect_depth(), 0};
  m.run_tick(v, {});
  EXPECT_EQ(m.state().kind, MissionStateKind::Inspect);
  const TickOutput c = m.run_tick(v, bright_frame());
  ASSERT_EQ(c.events.size(), 2u);
  EXPECT_EQ(c.events[0].kind, EventKind::RocksOnly);
  EXPECT_EQ(c.events[1].kind, EventKind::AscendStart);
  EXPECT_EQ(m.state().kind, MissionStateKind::Ascend);
  EXPECT_TRUE(m.explored().contains(target));

  v.z = f.config.survey_depth;
  m.run_tick(v, {});
  EXPECT_EQ(m.state().kind, MissionStateKind::Survey);
}

TEST(MissionMachineTest, BackendFailureIsFailSafe) {
  Fixture f;
  FixedBackend backend(Label::Rocks, true);
  MissionMachine m(f.config, f.camera, f.detector, f.waypoints, backend);
  VehicleState v{0, 0, 2, 0};
  m.run_tick(v, frame_with_disk(32, 10, 6));
  const Point2 target = m.state().descent_target;
  v = {target.x, target.y, f.config.inspect_depth(), 0};
  m.run_tick(v, {});
  const TickOutput c = m.run_tick(v, bright_frame());
  ASSERT_EQ(c.events.size(), 2u);
  EXPECT_EQ(c.events[0].kind, EventKind::RocksOnly);
  EXPECT_NE(c.events[0].detail.find("backend_error"), std::string::npos);
  EXPECT_EQ(m.state().kind, MissionStateKind::Ascend);
}

TEST(MissionMachineTest, InspectBurstMajorityVote) {
  Fixture f;
  f.config.inspect_frames = 3;
  FixedBackend backend(Label::Posidonia);
  MissionMachine m(f.config, f.camera, f.detector, f.waypoints, backend);
  VehicleState v{0, 0, 2, 0};
  m.run_tick(v, frame_with_disk(32, 10, 6));
  const Point2 target = m.state().descent_target;
  v = {target.x, target.y, f.config.inspect_depth(), 0};
  m.run_tick(v, {});
  EXPECT_TRUE(m.run_tick(v, bright_frame()).events.empty());
  EXPECT_TRUE(m.run_tick(v, bright_frame()).events.empty());
  const TickOutput c = m.run_tick(v, bright_frame());
  ASSERT_EQ(c.events.size(), 1u);
  EXPECT_EQ(c.events[0].kind, EventKind::PosidoniaFound);
  EXPECT_EQ(m.state().kind, MissionStateKind::TrackBoundary);
}

TEST(MissionMachineTest, LostBoundaryEndsTracking) {
  Fixture f;
  f.config.boundary_lost_limit = 5;
  FixedBackend backend(Label::Posidonia);  // never shows an edge in the band
  MissionMachine m(f.config, f.camera, f.detector, f.waypoints, backend);
  VehicleState v{0, 0, 2, 0};
  m.run_tick(v, frame_with_disk(32, 10, 6));
  v = {m.state().descent_target.x, m.state().descent_target.y, f.config.inspect_depth(), 0};
  m.run_tick(v, {});
  m.run_tick(v, bright_frame());
  ASSERT_EQ(m.state().kind, MissionStateKind::TrackBoundary);
  TickOutput last;
  for (int i = 0; i < 5; ++i) last = m.run_tick(v, bright_frame());
  ASSERT_EQ(last.events.size(), 2u);
  EXPECT_EQ(last.events[0].kind, EventKind::TrackLost);
  EXPECT_EQ(last.events[1].kind, EventKind::AscendStart);
}

Scenario small_scenario(bool with_patches) {
  std::string text = R"(seed = 4
[seafloor]
size_x = 160
size_y = 100
[water]
attenuation = 0.04 0.02 0.015
veil = 0.05 0.12 0.15
speckle_density = 200
[mission]
start = 10 20
[detector]
dark_threshold = 0.4
[waypoints]
150 20
150 50
10 50
10 80
150 80
)";
  if (with_patches) text += "[patches]\ncircle rocks 60 50 5\ncircle posidonia 110 80 10\n";
  return parse_scenario(text, ".");
}

// Event kinds as single letters for grammar matching.
std::string event_string(const MissionLog& log) {
  std::string s;
  for (const MissionEvent& e : log.events) s += "dsDPRtCLAWM"[static_cast<int>(e.kind)];
  return s;
}

TEST(RunMissionTest, ZeroPatchesOnlyWaypoints) {
  const Scenario s = small_scenario(false);
  OracleSegmenter seg(s, s.camera);
  const MissionLog log = run_mission(s, seg, 100000);
  EXPECT_TRUE(log.complete);
  EXPECT_EQ(event_string(log), "WWWWWM");
}

TEST(RunMissionTest, GrammarSafetyAndDeterminism) {
  const Scenario s = small_scenario(true);
  OracleSegmenter seg(s, s.camera);
  const MissionLog log = run_mission(s, seg, 100000);
  EXPECT_TRUE(log.complete);
  EXPECT_EQ(log.count(EventKind::DescendStart), 2u);
  EXPECT_EQ(log.count(EventKind::RocksOnly), 1u);
  EXPECT_EQ(log.count(EventKind::TrackClosed), 1u);
  const std::regex grammar("((dD(Pt?(C|L)|R)A)|s|W)*M");
  EXPECT_TRUE(std::regex_match(event_string(log), grammar)) << event_string(log);
  double prev = -1;
  for (const MissionEvent& e : log.events) {
    EXPECT_GE(e.time, prev);
    prev = e.time;
  }
  for (const TrajectoryRow& r : log.rows) {
    EXPECT_GE(r.z, 0.0);
    EXPECT_LE(r.z, s.mission.inspect_depth() + 1e-9);
  }
  OracleSegmenter seg2(s, s.camera);
  const MissionLog again = run_mission(s, seg2, 100000);
  EXPECT_EQ(again.rows, log.rows);
  EXPECT_EQ(again.events, log.events);
}

TEST(RunMissionTest, ProgressWithinBudget) {
  const Scenario s = small_scenario(true);
  double path = distance(s.start_position(), s.waypoints[0]);
  for (std::size_t i = 1; i < s.waypoints.size(); ++i) path += distance(s.waypoints[i - 1], s.waypoints[i]);
  const long long budget =
      static_cast<long long>(path / (s.mission.tracking.surge * s.mission.tick_dt) * 10.0);
  OracleSegmenter seg(s, s.camera);
  EXPECT_TRUE(run_mission(s, seg, budget).complete);
  OracleSegmenter seg2(s, s.camera);
  const MissionLog cut = run_mission(s, seg2, 50);
  EXPECT_FALSE(cut.complete);
  EXPECT_EQ(cut.ticks, 50);
  EXPECT_THROW(run_mission(s, seg2, 0), InvalidParameter);
}

TEST(RunMissionTest, Exports) {
  const Scenario s = small_scenario(true);
  OracleSegmenter seg(s, s.camera);
  const MissionLog log = run_mission(s, seg, 100000);
  std::ostringstream csv, ev, poly;
  write_trajectory_csv(csv, log);
  write_events(ev, log);
  write_polygons(poly, log);
  EXPECT_EQ(csv.str().rfind("t,x,y,z,yaw,state,event\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  EXPECT_EQ(lines, log.rows.size() + 1);
  EXPECT_NE(ev.str().find(" MISSION_COMPLETE "), std::string::npos);
  std::istringstream in(poly.str());
  const auto rings = read_rings(in);
  EXPECT_EQ(rings.size(), log.explored.size() + log.boundaries.size());
  const Raster map = render_map(s, log, 200);
  EXPECT_EQ(map.width(), 200);
  EXPECT_EQ(map.height(), 125);
}

}  // namespace
}  // namespace seagrass
