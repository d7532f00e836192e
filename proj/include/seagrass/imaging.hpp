#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "seagrass/raster.hpp"

namespace seagrass {

struct Hsv {
  double h = 0.0;  // degrees
  double s = 0.0;
  double v = 0.0;
};

Hsv rgb_to_hsv(double r, double g, double b);
std::array<double, 3> hsv_to_rgb(const Hsv& hsv);

// Water column: Beer-Lambert attenuation plus an additive backscatter veil
// and bright suspended-particle speckle.
struct WaterModel {
  std::array<double, 3> attenuation{0.0, 0.0, 0.0};  // 1/m per RGB channel
  std::array<double, 3> backscatter_veil{0.0, 0.0, 0.0};
  double speckle_density = 0.0;  // particles per megapixel
  double speckle_intensity = 1.0;
  std::uint64_t rng_seed = 0;

  // Empty when valid; otherwise one message per violated field.
  std::vector<std::string> violations() const;

  // Named presets. "clear" has no water effects at all. The jerlov_* and
  // coastal_* coefficients are rough illustrative values, not measurements.
  static WaterModel preset(const std::string& name);
  static std::vector<std::string> preset_names();
};

HsvRaster to_hsv(const Raster& img);
Raster from_hsv(const HsvRaster& hsv);

// Min-normalized cumulative-histogram remapping. Color images are equalized
// on the HSV value channel only; hue and saturation are untouched.
Raster equalize_histogram(const Raster& img, int bins = 256);

// out = in^exponent per channel.
Raster gamma_correct(const Raster& img, double exponent);

// out = in * exp(-c * path) + veil * (1 - exp(-c * path)) per channel.
Raster attenuate(const Raster& img, const WaterModel& water, double path_length);

// Deterministic bright single-pixel particles seeded from water.rng_seed.
Raster add_speckle(const Raster& img, const WaterModel& water);

}  // namespace seagrass
