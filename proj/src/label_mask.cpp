#include "seagrass/label_mask.hpp"

#include <algorithm>
#include <string>

#include "seagrass/error.hpp"
#include "seagrass/pnm.hpp"

namespace seagrass {

const char* label_name(Label l) {
  switch (l) {
    case Label::Background: return "background";
    case Label::Posidonia: return "posidonia";
    case Label::Debris: return "debris";
    case Label::Rocks: return "rocks";
  }
  return "unknown";
}

Label label_from_int(int value) {
  if (value < 0 || value >= kLabelCount) throw InvalidInput("invalid class code " + std::to_string(value));
  return static_cast<Label>(value);
}

LabelMask::LabelMask(int width, int height, Label fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw InvalidInput("label mask dimensions must be positive");
  labels_.assign(static_cast<std::size_t>(width) * height, fill);
}

BinaryMask LabelMask::plane(Label l) const {
  BinaryMask out(width_, height_);
  for (std::size_t i = 0; i < labels_.size(); ++i) out.bits[i] = labels_[i] == l ? 1 : 0;
  return out;
}

std::size_t LabelMask::count(Label l) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l));
}

LabelMask read_label_mask(const std::filesystem::path& path) {
  const pnm::Image8 img = pnm::read(path);
  if (img.channels != 1) throw LoadError(path.string() + ": label mask must be a P5 graymap");
  LabelMask mask(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const int v = img.pixels[static_cast<std::size_t>(y) * img.width + x];
      if (v >= kLabelCount)
        throw LoadError(path.string() + ": invalid class code " + std::to_string(v) + " at (" + std::to_string(x) +
                        "," + std::to_string(y) + ")");
      mask.set(x, y, static_cast<Label>(v));
    }
  }
  return mask;
}

void write_label_mask(const std::filesystem::path& path, const LabelMask& mask) {
  pnm::Image8 img{mask.width(), mask.height(), 1, 255, {}};
  img.pixels.reserve(mask.pixel_count());
  for (Label l : mask.labels()) img.pixels.push_back(static_cast<std::uint8_t>(l));
  pnm::write(path, img);
}

}  // namespace seagrass
