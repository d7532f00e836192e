#include "seagrass/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "seagrass/error.hpp"
#include "seagrass/rng.hpp"

namespace seagrass {

Hsv rgb_to_hsv(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0 ? delta / mx : 0.0;
  if (delta <= 0.0) {
    out.h = 0.0;
    return out;
  }
  double h;
  if (mx == r) {
    h = 60.0 * std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

std::array<double, 3> hsv_to_rgb(const Hsv& hsv) {
  const double c = hsv.v * hsv.s;
  const double hp = std::fmod(hsv.h, 360.0) / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = hsv.v - c;
  return {r + m, g + m, b + m};
}

std::vector<std::string> WaterModel::violations() const {
  std::vector<std::string> out;
  static const char* kChannel[3] = {"r", "g", "b"};
  for (int k = 0; k < 3; ++k) {
    if (!std::isfinite(attenuation[k]) || attenuation[k] < 0.0)
      out.push_back(std::string("water.attenuation.") + kChannel[k] + ": must be finite and >= 0");
    if (!std::isfinite(backscatter_veil[k]) || backscatter_veil[k] < 0.0 || backscatter_veil[k] > 1.0)
      out.push_back(std::string("water.veil.") + kChannel[k] + ": must lie in [0, 1]");
  }
  if (!std::isfinite(speckle_density) || speckle_density < 0.0)
    out.push_back("water.speckle_density: must be finite and >= 0");
  if (!std::isfinite(speckle_intensity) || speckle_intensity < 0.0 || speckle_intensity > 1.0)
    out.push_back("water.speckle_intensity: must lie in [0, 1]");
  return out;
}

namespace {

struct PresetCoefficients {
  std::array<double, 3> attenuation;
  std::array<double, 3> veil;
  double speckle_density;
};

const std::map<std::string, PresetCoefficients>& presets() {
  // Red is absorbed fastest; turbid coastal water gets a greener, brighter veil.
  static const std::map<std::string, PresetCoefficients> table = {
      {"clear", {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 0.0}},
      {"jerlov_I", {{0.30, 0.045, 0.025}, {0.02, 0.10, 0.16}, 100.0}},
      {"jerlov_II", {{0.32, 0.065, 0.060}, {0.03, 0.13, 0.17}, 200.0}},
      {"jerlov_III", {{0.36, 0.090, 0.110}, {0.04, 0.16, 0.18}, 400.0}},
      {"coastal_1", {{0.40, 0.100, 0.150}, {0.05, 0.18, 0.17}, 600.0}},
      {"coastal_3", {{0.45, 0.150, 0.250}, {0.06, 0.22, 0.18}, 800.0}},
      {"coastal_5", {{0.55, 0.220, 0.400}, {0.08, 0.26, 0.18}, 1000.0}},
      {"coastal_7", {{0.70, 0.320, 0.600}, {0.10, 0.30, 0.17}, 1500.0}},
      {"coastal_9", {{0.90, 0.450, 0.900}, {0.12, 0.33, 0.16}, 2000.0}},
  };
  return table;
}

// Maps every value through the min-normalized cdf of its histogram bin.
void equalize_values(std::vector<double>& values, int bins) {
  if (values.empty()) return;
  auto bin_of = [bins](double v) {
    return std::min(bins - 1, static_cast<int>(std::floor(v * bins)));
  };
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) ++counts[bin_of(v)];

  const double total = static_cast<double>(values.size());
  std::vector<double> cdf(bins, 0.0);
  std::size_t running = 0;
  double cdf_min = -1.0;
  for (int b = 0; b < bins; ++b) {
    running += counts[b];
    cdf[b] = static_cast<double>(running) / total;
    if (cdf_min < 0.0 && counts[b] > 0) cdf_min = cdf[b];
  }
  if (cdf_min >= 1.0) return;  // single occupied bin: identity

  for (double& v : values) {
    v = std::clamp((cdf[bin_of(v)] - cdf_min) / (1.0 - cdf_min), 0.0, 1.0);
  }
}

}  // namespace

WaterModel WaterModel::preset(const std::string& name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown water preset '" + name + "'");
  WaterModel w;
  w.attenuation = it->second.attenuation;
  w.backscatter_veil = it->second.veil;
  w.speckle_density = it->second.speckle_density;
  return w;
}

std::vector<std::string> WaterModel::preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  return names;
}

HsvRaster to_hsv(const Raster& img) {
  if (img.empty() || img.channels() != 3) throw InvalidInput("to_hsv requires a 3-channel raster");
  HsvRaster out;
  out.width = img.width();
  out.height = img.height();
  const std::size_t n = img.pixel_count();
  out.hue.resize(n);
  out.saturation.resize(n);
  out.value.resize(n);
  const auto data = img.data();
  for (std::size_t i = 0; i < n; ++i) {
    const Hsv hsv = rgb_to_hsv(data[3 * i], data[3 * i + 1], data[3 * i + 2]);
    out.hue[i] = hsv.h;
    out.saturation[i] = hsv.s;
    out.value[i] = hsv.v;
  }
  return out;
}

Raster from_hsv(const HsvRaster& hsv) {
  Raster out(hsv.width, hsv.height, 3);
  for (int y = 0; y < hsv.height; ++y) {
    for (int x = 0; x < hsv.width; ++x) {
      const std::size_t i = hsv.index(x, y);
      out.set_rgb(x, y, hsv_to_rgb({hsv.hue[i], hsv.saturation[i], hsv.value[i]}));
    }
  }
  return out;
}

Raster equalize_histogram(const Raster& img, int bins) {
  if (bins < 2) throw InvalidParameter("equalize_histogram: bins must be >= 2");
  if (img.empty()) throw InvalidInput("equalize_histogram: empty raster");

  if (img.channels() == 1) {
    std::vector<double> values(img.data().begin(), img.data().end());
    equalize_values(values, bins);
    Raster out(img.width(), img.height(), 1);
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x)
        out.set(x, y, 0, values[static_cast<std::size_t>(y) * img.width() + x]);
    return out;
  }

  // Scale RGB by the value ratio rather than round-tripping hue through
  // hsv_to_rgb, so hue and saturation are preserved up to rounding.
  const HsvRaster hsv = to_hsv(img);
  std::vector<double> values = hsv.value;
  equalize_values(values, bins);
  Raster out(img.width(), img.height(), 3);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::size_t i = hsv.index(x, y);
      const double v_old = hsv.value[i];
      const double v_new = values[i];
      if (v_old <= 0.0) {
        out.set_rgb(x, y, {v_new, v_new, v_new});
        continue;
      }
      const double scale = v_new / v_old;
      const auto rgb = img.rgb(x, y);
      out.set_rgb(x, y, {rgb[0] * scale, rgb[1] * scale, rgb[2] * scale});
    }
  }
  return out;
}

Raster gamma_correct(const Raster& img, double exponent) {
  if (!std::isfinite(exponent) || exponent <= 0.0)
    throw InvalidParameter("gamma_correct: exponent must be finite and > 0");
  Raster out = img;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c) out.set(x, y, c, std::pow(img.at(x, y, c), exponent));
  return out;
}

Raster attenuate(const Raster& img, const WaterModel& water, double path_length) {
  if (!std::isfinite(path_length) || path_length < 0.0)
    throw InvalidParameter("attenuate: path_length must be finite and >= 0");
  std::array<double, 3> transmission{};
  for (int k = 0; k < 3; ++k) transmission[k] = std::exp(-water.attenuation[k] * path_length);

  Raster out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        const double t = transmission[c];
        const double veil = water.backscatter_veil[c];
        out.set(x, y, c, img.at(x, y, c) * t + veil * (1.0 - t));
      }
    }
  }
  return out;
}

Raster add_speckle(const Raster& img, const WaterModel& water) {
  if (!std::isfinite(water.speckle_density) || water.speckle_density < 0.0)
    throw InvalidParameter("add_speckle: speckle_density must be finite and >= 0");
  Raster out = img;
  if (img.empty()) return out;
  const double megapixels = static_cast<double>(img.pixel_count()) / 1e6;
  const auto count = static_cast<std::uint64_t>(std::llround(water.speckle_density * megapixels));
  Rng rng(water.rng_seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto p = rng.index(img.pixel_count());
    const int x = static_cast<int>(p % img.width());
    const int y = static_cast<int>(p / img.width());
    for (int c = 0; c < img.channels(); ++c)
      out.set(x, y, c, std::max(out.at(x, y, c), water.speckle_intensity));
  }
  return out;
}

}  // namespace seagrass
