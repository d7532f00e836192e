#pragma once

#include <array>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "seagrass/camera.hpp"
#include "seagrass/geometry.hpp"
#include "seagrass/imaging.hpp"
#include "seagrass/label_mask.hpp"
#include "seagrass/raster.hpp"
#include "seagrass/vehicle.hpp"

namespace seagrass {

struct Scenario;

// Anything that turns a camera frame into a label mask of the same size.
// The mission loop calls observe_pose before segment on every frame so
// backends that need the pose (the ground-truth oracle) can use it.
class SegmenterBackend {
 public:
  virtual ~SegmenterBackend() = default;
  virtual LabelMask segment(const Raster& img) = 0;
  virtual void observe_pose(const VehicleState& /*pose*/) {}
};

// Perfect segmentation: samples the scenario label map through the camera
// footprint of the last observed pose. Ignores pixel content.
class OracleSegmenter : public SegmenterBackend {
 public:
  OracleSegmenter(const Scenario& scenario, const CameraModel& camera, const VehicleState& pose = {});

  LabelMask segment(const Raster& img) override;
  void observe_pose(const VehicleState& pose) override { pose_ = pose; }

 private:
  const Scenario* scenario_;
  CameraModel camera_;
  VehicleState pose_;
};

std::unique_ptr<OracleSegmenter> oracle_segmenter(const Scenario& scenario, const VehicleState& pose,
                                                  const CameraModel& camera);

// Closed box in HSV space. Hue wraps when hue_min > hue_max.
struct HsvRange {
  Label label = Label::Background;
  double hue_min = 0.0;
  double hue_max = 360.0;
  double sat_min = 0.0;
  double sat_max = 1.0;
  double val_min = 0.0;
  double val_max = 1.0;

  bool contains(const Hsv& p) const;
};

struct BaselineConfig {
  std::vector<HsvRange> ranges;
  // With priority ordering a pixel in several ranges takes the highest class
  // (posidonia > rocks > debris); without it overlapping ranges are rejected.
  bool priority_ordered = true;
  bool smoothing = true;  // 3x3 majority filter

  // Tuned against the default render colors.
  static BaselineConfig defaults();
};

class BaselineSegmenter : public SegmenterBackend {
 public:
  // Throws ConfigError for overlapping ranges when priority is disabled, and
  // for ranges labeled background.
  explicit BaselineSegmenter(BaselineConfig config);

  LabelMask segment(const Raster& img) override;

 private:
  BaselineConfig config_;
};

std::unique_ptr<BaselineSegmenter> baseline_segmenter(BaselineConfig config);

struct SegmentationSummary {
  std::array<double, kLabelCount> fractions{};
  Label dominant_class = Label::Background;
  bool posidonia_present = false;
  bool rocks_present = false;
};

SegmentationSummary summarize(const LabelMask& mask, double min_fraction = 0.05);

// Outer contours of the posidonia plane, largest area first.
std::vector<Polygon> meadow_boundary(const LabelMask& mask);

// Intersection over union of one class; 1 when the class is absent from both.
double iou(const LabelMask& ground_truth, const LabelMask& prediction, Label c);

// Mean over (pair, class) elements where the class appears in either mask.
// Returns 1 when no element qualifies.
double mean_iou(std::span<const std::pair<LabelMask, LabelMask>> pairs, std::span<const Label> classes);

}  // namespace seagrass
