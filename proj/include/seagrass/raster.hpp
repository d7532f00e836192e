#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace seagrass {

// H x W image with 1 or 3 channels of intensities in [0, 1], row-major,
// channels interleaved (RGB order for color images).
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, int channels, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }
  // Stores v clamped to [0, 1]; the unit-interval invariant cannot be broken.
  void set(int x, int y, int c, double v);
  void set_rgb(int x, int y, const std::array<double, 3>& rgb);
  std::array<double, 3> rgb(int x, int y) const;

  std::span<const double> data() const { return data_; }

  bool operator==(const Raster&) const = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// Per-pixel hue in degrees [0, 360), saturation and value in [0, 1].
struct HsvRaster {
  int width = 0;
  int height = 0;
  std::vector<double> hue;
  std::vector<double> saturation;
  std::vector<double> value;

  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

}  // namespace seagrass
