#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "seagrass/raster.hpp"

namespace seagrass::pnm {

// Raw 8-bit graymap/pixmap payload as stored on disk (samples not rescaled).
struct Image8 {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 for P5, 3 for P6
  int maxval = 255;
  std::vector<std::uint8_t> pixels;
};

Image8 read(const std::filesystem::path& path);
void write(const std::filesystem::path& path, const Image8& image);

// Intensities quantize as round(v * 255) on write and v / maxval on read.
Raster read_raster(const std::filesystem::path& path);
void write_raster(const std::filesystem::path& path, const Raster& img);

}  // namespace seagrass::pnm
