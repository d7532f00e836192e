#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "seagrass/geometry.hpp"

namespace seagrass {

enum class Label : std::uint8_t { Background = 0, Posidonia = 1, Debris = 2, Rocks = 3 };

inline constexpr int kLabelCount = 4;

constexpr int index_of(Label l) { return static_cast<int>(l); }
const char* label_name(Label l);
// Throws InvalidInput for values outside 0..3.
Label label_from_int(int value);

// Per-pixel class codes, row-major.
class LabelMask {
 public:
  LabelMask() = default;
  LabelMask(int width, int height, Label fill = Label::Background);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  Label at(int x, int y) const { return labels_[static_cast<std::size_t>(y) * width_ + x]; }
  void set(int x, int y, Label l) { labels_[static_cast<std::size_t>(y) * width_ + x] = l; }
  const std::vector<Label>& labels() const { return labels_; }

  // Binary plane of pixels equal to the given class.
  BinaryMask plane(Label l) const;
  std::size_t count(Label l) const;

  bool operator==(const LabelMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Label> labels_;
};

// P5 graymap with codes stored literally; any sample above 3 is rejected.
LabelMask read_label_mask(const std::filesystem::path& path);
void write_label_mask(const std::filesystem::path& path, const LabelMask& mask);

}  // namespace seagrass
