#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "seagrass/geometry.hpp"
#include "seagrass/label_mask.hpp"
#include "seagrass/raster.hpp"

namespace seagrass {

// Annotation polygons use continuous image coordinates: pixel (i, j) covers
// [i, i+1) x [j, j+1), so a polygon may touch x = width.
struct AnnotationRegion {
  Label label = Label::Posidonia;
  std::vector<Point2> points;
};

struct AnnotationEntry {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<AnnotationRegion> regions;
};

using AnnotationSet = std::vector<AnnotationEntry>;

// Throws InvalidAnnotation on schema violations.
AnnotationSet parse_annotations(const std::string& json_text);
AnnotationSet load_annotations(const std::filesystem::path& path);
std::string to_json(const AnnotationSet& set);

// Regions filled in order, later ones overwriting earlier ones; a pixel
// belongs to a region when its center is inside or on the polygon.
LabelMask rasterize_annotations(const AnnotationEntry& entry);

struct SplitSpec {
  double train = 0.7;
  double val = 0.2;
  double test = 0.1;
  std::uint64_t seed = 0;

  std::vector<std::string> violations() const;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

// train = ceil(f_train * n), val = floor(f_val * n), test = the rest.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
};

DatasetSplit split(const std::vector<std::string>& ids, const SplitSpec& spec);

struct Transform {
  enum class Kind { Rotate90, FlipH, FlipV, Scale, ZoomCrop };
  Kind kind = Kind::FlipH;
  int quarter_turns = 1;  // Rotate90: 1..3
  double factor = 1.0;    // Scale: (0, 2]; ZoomCrop: (0, 1]

  std::string describe() const;
};

// Applies the transforms in order to both inputs. Masks are resampled by
// nearest neighbor, rasters bilinearly. Scale changes the output size.
std::pair<Raster, LabelMask> augment(const Raster& img, const LabelMask& mask, const std::vector<Transform>& transforms);

// Histogram equalization followed by a power-law correction.
Raster enhance_for_rocks(const Raster& img, double gamma = 1.5);

}  // namespace seagrass
