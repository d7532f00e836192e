#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "seagrass/cli.hpp"
#include "seagrass/mission.hpp"
#include "seagrass/pnm.hpp"
#include "seagrass/world.hpp"

namespace fs = std::filesystem;

namespace seagrass {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("seagrass_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

const fs::path kScenarios = SEAGRASS_SCENARIO_DIR;

TEST_F(CliTest, DatasetSplitPrintsCounts) {
  {
    std::ofstream f(dir_ / "list.txt");
    for (int i = 0; i < 6949; ++i) f << "img" << i << "\n";
  }
  const Result r = run({"dataset-split", (dir_ / "list.txt").string(), "--out", (dir_ / "s").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4865 1389 695\n");
  const std::string train = slurp(dir_ / "s" / "train.txt");
  EXPECT_EQ(std::count(train.begin(), train.end(), '\n'), 4865);
  const Result again = run({"dataset-split", (dir_ / "list.txt").string(), "--out", (dir_ / "s2").string()});
  EXPECT_EQ(slurp(dir_ / "s2" / "train.txt"), train);
}

TEST_F(CliTest, EvalIouIdenticalDirectories) {
  LabelMask m(8, 8, Label::Background);
  m.set(2, 3, Label::Posidonia);
  fs::create_directories(dir_ / "gt");
  write_label_mask(dir_ / "gt" / "a.pgm", m);
  write_label_mask(dir_ / "gt" / "b.pgm", LabelMask(8, 8, Label::Rocks));
  const Result r = run({"eval-iou", (dir_ / "gt").string(), (dir_ / "gt").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mean 1.000000\n"), std::string::npos);
  EXPECT_EQ(run({"eval-iou", (dir_ / "gt").string(), (dir_ / "missing").string()}).code, 1);
  EXPECT_EQ(run({"eval-iou", (dir_ / "gt").string(), (dir_ / "gt").string(), "--classes", "kelp"}).code, 1);
}

TEST_F(CliTest, DetectDarkDisk) {
  Raster img(80, 80, 3, 0.8);
  for (int y = 0; y < 80; ++y)
    for (int x = 0; x < 80; ++x)
      if ((x - 15) * (x - 15) + (y - 60) * (y - 60) <= 36) img.set_rgb(x, y, {0.05, 0.05, 0.05});
  pnm::write_raster(dir_ / "disk.ppm", img);
  const Result r = run({"detect", (dir_ / "disk.ppm").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("patch 0 centroid 15.000 60.000 area ", 0), 0u) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}

TEST_F(CliTest, LawnmowerReproducesFivePatchWaypoints) {
  const Result r = run({"gen-lawnmower", "--bounds", "10,15,390,375", "--spacing", "30"});
  ASSERT_EQ(r.code, 0);
  const Scenario s = load_scenario(kScenarios / "five_patch.txt");
  std::ostringstream expect;
  expect << "[waypoints]\n";
  for (const Point2& p : s.waypoints) expect << p.x << " " << p.y << "\n";
  EXPECT_EQ(r.out, expect.str());
  EXPECT_EQ(run({"gen-lawnmower", "--bounds", "0,0,10", "--spacing", "3"}).code, 1);
  EXPECT_EQ(run({"gen-lawnmower", "--bounds", "0,0,10,10", "--spacing", "-1"}).code, 1);
}

TEST_F(CliTest, LawnmowerClampsLastRow) {
  const auto w = lawnmower({0, 0, 10, 7}, 3);
  ASSERT_EQ(w.size(), 8u);
  EXPECT_EQ(w[6].y, 7.0);
  EXPECT_EQ(w[6].x, 10.0);
  EXPECT_EQ(w[7].x, 0.0);
}

TEST_F(CliTest, SurveyRunMissingScenarioNamesPath) {
  const std::string path = (dir_ / "absent.txt").string();
  const Result r = run({"survey-run", "--scenario", path, "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(path), std::string::npos);
}

TEST_F(CliTest, SurveyRunInvalidScenarioListsAllViolations) {
  {
    std::ofstream f(dir_ / "bad.txt");
    f << "[mission]\ninspect_altitude = 20\ntick_dt = 3\n[waypoints]\n1 1\n";
  }
  const Result r = run({"survey-run", "--scenario", (dir_ / "bad.txt").string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("inspect_altitude"), std::string::npos);
  EXPECT_NE(r.err.find("tick_dt"), std::string::npos);
}

TEST_F(CliTest, SurveyRunZeroPatches) {
  {
    std::ofstream f(dir_ / "empty.txt");
    f << "[seafloor]\nsize_x = 60\nsize_y = 60\n[mission]\nstart = 5 5\n[waypoints]\n50 5\n50 30\n";
  }
  const Result r = run({"survey-run", "--scenario", (dir_ / "empty.txt").string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "patches found 0 tracked 0 skipped 0\n");
}

TEST_F(CliTest, SurveyRunFivePatchArtifactsMatchLog) {
  const std::string scenario = (kScenarios / "five_patch.txt").string();
  const Result r = run({"survey-run", "--scenario", scenario, "--out", (dir_ / "o").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "patches found 5 tracked 3 skipped 0\n");

  const Scenario s = load_scenario(scenario);
  OracleSegmenter seg(s, s.camera);
  const MissionLog log = run_mission(s, seg, 2'000'000);
  std::ostringstream csv, events, polys;
  write_trajectory_csv(csv, log);
  write_events(events, log);
  write_polygons(polys, log);
  EXPECT_EQ(slurp(dir_ / "o" / "trajectory.csv"), csv.str());
  EXPECT_EQ(slurp(dir_ / "o" / "events.txt"), events.str());
  EXPECT_EQ(slurp(dir_ / "o" / "polygons.txt"), polys.str());
  const Raster map = pnm::read_raster(dir_ / "o" / "map.ppm");
  EXPECT_EQ(map.width(), 800);
}

TEST_F(CliTest, RenderAndEnhanceAreIdempotent) {
  const std::string scenario = (kScenarios / "circle_meadow.txt").string();
  for (const char* name : {"a", "b"}) {
    const fs::path out = dir_ / name;
    fs::create_directories(out);
    ASSERT_EQ(run({"render", "--scenario", scenario, "--pose", "100,90,10,30", "--out", (out / "v.ppm").string(),
                   "--labels", (out / "v.pgm").string()})
                  .code,
              0);
    ASSERT_EQ(run({"enhance", (out / "v.ppm").string(), "--gamma", "2", "--out", (out / "e.ppm").string()}).code, 0);
  }
  for (const char* f : {"v.ppm", "v.pgm", "e.ppm"}) EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  EXPECT_EQ(run({"render", "--scenario", scenario, "--pose", "1,2,3", "--out", (dir_ / "x.ppm").string()}).code, 1);
}

TEST_F(CliTest, DatasetMasksAndAugment) {
  {
    std::ofstream f(dir_ / "ann.json");
    f << R"([{"image": "tile1", "width": 10, "height": 8,
              "regions": [{"class": 1, "points": [[1,1],[6,1],[6,5],[1,5]]}]}])";
  }
  const Result r = run({"dataset-masks", (dir_ / "ann.json").string(), "--out", (dir_ / "m").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const LabelMask m = read_label_mask(dir_ / "m" / "tile1.pgm");
  EXPECT_EQ(m.count(Label::Posidonia), 20u);

  pnm::write_raster(dir_ / "tile1.ppm", Raster(10, 8, 3, 0.5));
  fs::copy_file(dir_ / "m" / "tile1.pgm", dir_ / "tile1.pgm");
  {
    std::ofstream f(dir_ / "pairs.txt");
    f << "tile1.ppm tile1.pgm\n";
  }
  for (const char* out : {"a1", "a2"})
    ASSERT_EQ(run({"dataset-augment", (dir_ / "pairs.txt").string(), "--seed", "3", "--count", "4", "--out",
                   (dir_ / out).string()})
                  .code,
              0);
  EXPECT_EQ(slurp(dir_ / "a1" / "augment.txt"), slurp(dir_ / "a2" / "augment.txt"));
  for (int k = 0; k < 4; ++k) {
    const std::string stem = "tile1_aug" + std::to_string(k);
    EXPECT_EQ(slurp(dir_ / "a1" / (stem + ".pgm")), slurp(dir_ / "a2" / (stem + ".pgm")));
  }

  {
    std::ofstream f(dir_ / "bad.json");
    f << R"([{"image": "t", "width": 4, "height": 4, "regions": [{"class": 1, "points": [[0,0],[9,0],[0,3]]}]}])";
  }
  const Result bad = run({"dataset-masks", (dir_ / "bad.json").string(), "--out", (dir_ / "m").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("t"), std::string::npos);
}

TEST_F(CliTest, HelpAndUnknownFlags) {
  for (const char* sub : {"survey-run", "detect", "enhance", "render", "eval-iou", "dataset-masks", "dataset-split",
                          "dataset-augment", "gen-lawnmower"}) {
    const Result h = run({sub, "--help"});
    EXPECT_EQ(h.code, 0) << sub;
    EXPECT_NE(h.out.find("Usage"), std::string::npos) << sub;
    EXPECT_EQ(run({sub, "--no-such-flag"}).code, 1) << sub;
  }
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"fly"}).code, 1);
}

}  // namespace
}  // namespace seagrass
