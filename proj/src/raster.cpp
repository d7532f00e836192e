#include "seagrass/raster.hpp"

#include <algorithm>

#include "seagrass/error.hpp"

namespace seagrass {

Raster::Raster(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  if (width <= 0 || height <= 0) throw InvalidInput("raster dimensions must be positive");
  if (channels != 1 && channels != 3) throw InvalidInput("raster must have 1 or 3 channels");
  data_.assign(static_cast<std::size_t>(width) * height * channels, std::clamp(fill, 0.0, 1.0));
}

void Raster::set(int x, int y, int c, double v) {
  data_[index(x, y, c)] = std::clamp(v, 0.0, 1.0);
}

void Raster::set_rgb(int x, int y, const std::array<double, 3>& rgb) {
  for (int c = 0; c < 3; ++c) set(x, y, c, rgb[c]);
}

std::array<double, 3> Raster::rgb(int x, int y) const {
  if (channels_ == 1) {
    const double v = at(x, y);
    return {v, v, v};
  }
  return {at(x, y, 0), at(x, y, 1), at(x, y, 2)};
}

}  // namespace seagrass
