#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "seagrass/camera.hpp"
#include "seagrass/darkpatch.hpp"
#include "seagrass/imaging.hpp"
#include "seagrass/label_mask.hpp"
#include "seagrass/mission_config.hpp"
#include "seagrass/raster.hpp"
#include "seagrass/vehicle.hpp"

namespace seagrass {

using Rgb = std::array<double, 3>;

struct SeafloorTexture {
  // Indexed by class code: sand, posidonia, debris, rocks.
  std::array<Rgb, kLabelCount> colors{{{0.85, 0.78, 0.60}, {0.10, 0.28, 0.12}, {0.45, 0.40, 0.33}, {0.30, 0.30, 0.32}}};
  double noise_amplitude = 0.05;  // relative brightness noise per map cell
};

// Label grid on the seafloor plane. Cell (i, j) covers
// [origin.x + i*res, origin.x + (i+1)*res) x [origin.y + j*res, origin.y + (j+1)*res);
// grid row j is stored as mask row j.
struct Seafloor {
  LabelMask label_map;
  double resolution = 0.25;
  Point2 origin;
  SeafloorTexture texture;

  // Background outside the grid.
  Label at_world(Point2 p) const;
};

// Simple shapes painted onto the label map in listed order.
struct PatchShape {
  enum class Kind { Circle, Rect };
  Kind kind = Kind::Circle;
  Label label = Label::Posidonia;
  double a = 0, b = 0, c = 0, d = 0;  // circle: cx cy r; rect: x0 y0 x1 y1

  bool contains(Point2 p) const;
  Point2 center() const;
};

void paint_patch(Seafloor& seafloor, const PatchShape& patch);

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  Seafloor seafloor;
  WaterModel water;
  CameraModel camera;
  DetectorConfig detector;
  MissionConfig mission;
  VehicleLimits vehicle;
  std::vector<Point2> waypoints;
  std::vector<PatchShape> patches;
  bool has_start = false;
  Point2 start;

  // Vehicle limits with the seabed depth filled in from the mission config.
  VehicleLimits limits() const;
  Point2 start_position() const;
};

// Every invariant violation, each prefixed with its field path.
std::vector<std::string> validate(const Scenario& scenario);

// Parses the text format; throws LoadError ("<file>:<line>: ...") on syntax
// errors or unreadable files and ValidationError listing all violations.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir,
                        const std::string& source_name = "<scenario>");

// Ground-truth labels seen by the camera (nearest cell per pixel center).
LabelMask sample_labels(const Scenario& scenario, const VehicleState& pose, const CameraModel& camera);

struct RenderResult {
  Raster image;
  LabelMask labels;
};

// Textured class colors, then attenuation over the altitude and speckle.
// Deterministic in (scenario.seed, pose).
RenderResult render(const Scenario& scenario, const VehicleState& pose, const CameraModel& camera);

Polygon footprint(const Scenario& scenario, const VehicleState& pose);

}  // namespace seagrass
