#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "seagrass/error.hpp"
#include "seagrass/imaging.hpp"
#include "seagrass/segmentation.hpp"

namespace seagrass {
namespace {

LabelMask from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.begin()->size());
  LabelMask m(w, h);
  int y = 0;
  for (const auto& row : rows) {
    int x = 0;
    for (int v : row) m.set(x++, y, label_from_int(v));
    ++y;
  }
  return m;
}

TEST(LabelMaskTest, RejectsInvalidCodes) {
  EXPECT_THROW(label_from_int(4), InvalidInput);
  EXPECT_THROW(label_from_int(-1), InvalidInput);
  EXPECT_EQ(label_from_int(3), Label::Rocks);
}

TEST(LabelMaskTest, FileRoundTripAndRejection) {
  const auto dir = std::filesystem::temp_directory_path() / "seagrass_label_test";
  std::filesystem::create_directories(dir);
  const LabelMask m = from_rows({{0, 1, 2}, {3, 1, 0}});
  write_label_mask(dir / "m.pgm", m);
  EXPECT_EQ(read_label_mask(dir / "m.pgm"), m);

  std::ofstream(dir / "bad.pgm", std::ios::binary) << "P5\n2 1\n255\n" << char(1) << char(7);
  EXPECT_THROW(read_label_mask(dir / "bad.pgm"), LoadError);
}

TEST(IouTest, Examples) {
  const LabelMask a = from_rows({{1, 1}, {1, 0}});
  EXPECT_DOUBLE_EQ(iou(a, a, Label::Posidonia), 1.0);
  const LabelMask b = from_rows({{1, 1}, {0, 1}});
  EXPECT_DOUBLE_EQ(iou(a, b, Label::Posidonia), 0.5);
  const LabelMask c = from_rows({{0, 0}, {0, 1}});
  const LabelMask d = from_rows({{1, 0}, {0, 0}});
  EXPECT_DOUBLE_EQ(iou(c, d, Label::Posidonia), 0.0);
  EXPECT_DOUBLE_EQ(iou(c, d, Label::Rocks), 1.0);
  EXPECT_THROW(iou(a, LabelMask(3, 2), Label::Posidonia), InvalidInput);
}

TEST(IouTest, MatchesOracleSymmetricAndPermutationInvariant) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const LabelMask a = oracle::random_mask(rng, 16, 12);
    const LabelMask b = oracle::random_mask(rng, 16, 12);
    // Apply the same random permutation to both masks.
    std::vector<int> perm(a.pixel_count());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
    LabelMask pa(16, 12), pb(16, 12);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const int src = perm[i];
      pa.set(int(i) % 16, int(i) / 16, a.at(src % 16, src / 16));
      pb.set(int(i) % 16, int(i) / 16, b.at(src % 16, src / 16));
    }
    for (int c = 0; c < kLabelCount; ++c) {
      const Label l = static_cast<Label>(c);
      EXPECT_EQ(iou(a, b, l), oracle::brute_force_iou(a, b, l));
      EXPECT_EQ(iou(a, b, l), iou(b, a, l));
      EXPECT_EQ(iou(a, b, l), iou(pa, pb, l));
    }
  }
}

TEST(IouTest, NestedPredictionsAreMonotone) {
  Rng rng(5);
  LabelMask gt(20, 20);
  for (int y = 2; y < 18; ++y)
    for (int x = 2; x < 18; ++x) gt.set(x, y, Label::Posidonia);
  LabelMask pred(20, 20);
  double last = iou(gt, pred, Label::Posidonia);
  for (int k = 0; k < 300; ++k) {
    const int x = 2 + int(rng.index(16)), y = 2 + int(rng.index(16));
    pred.set(x, y, Label::Posidonia);
    const double now = iou(gt, pred, Label::Posidonia);
    EXPECT_GE(now, last);
    last = now;
  }
}

TEST(MeanIouTest, Examples) {
  const Label one[] = {Label::Posidonia};
  const LabelMask a = from_rows({{1, 1}, {1, 0}});
  const LabelMask b = from_rows({{1, 1}, {0, 1}});
  const LabelMask z = from_rows({{0, 0}, {0, 0}});
  const LabelMask f = from_rows({{1, 1}, {1, 1}});
  std::vector<std::pair<LabelMask, LabelMask>> same{{a, a}, {b, b}};
  EXPECT_DOUBLE_EQ(mean_iou(same, one), 1.0);
  std::vector<std::pair<LabelMask, LabelMask>> single{{a, b}};
  EXPECT_DOUBLE_EQ(mean_iou(single, one), 0.5);
  // Per-pair values 1.0, 0.5 and 0.0.
  std::vector<std::pair<LabelMask, LabelMask>> three{{a, a}, {a, b}, {z, f}};
  EXPECT_DOUBLE_EQ(mean_iou(three, one), 0.5);
  // A class absent from both masks contributes nothing.
  const Label two[] = {Label::Posidonia, Label::Rocks};
  EXPECT_DOUBLE_EQ(mean_iou(single, two), 0.5);
  std::vector<std::pair<LabelMask, LabelMask>> none;
  EXPECT_THROW(mean_iou(none, one), InvalidInput);
}

TEST(SummarizeTest, Examples) {
  const SegmentationSummary s0 = summarize(LabelMask(10, 10), 0.05);
  EXPECT_EQ(s0.fractions[0], 1.0);
  EXPECT_FALSE(s0.posidonia_present);
  EXPECT_FALSE(s0.rocks_present);

  LabelMask m(10, 10);
  for (int i = 0; i < 30; ++i) m.set(i % 10, i / 10, Label::Posidonia);
  const SegmentationSummary s = summarize(m, 0.2);
  EXPECT_TRUE(s.posidonia_present);
  EXPECT_FALSE(s.rocks_present);
  EXPECT_EQ(s.dominant_class, Label::Background);
  EXPECT_FALSE(summarize(m, 0.31).posidonia_present);
  EXPECT_TRUE(summarize(m, 0.30).posidonia_present);
}

TEST(SummarizeTest, FractionsSumToOne) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const int w = 1 + int(rng.index(40)), h = 1 + int(rng.index(40));
    const SegmentationSummary s = summarize(oracle::random_mask(rng, w, h));
    EXPECT_NEAR(s.fractions[0] + s.fractions[1] + s.fractions[2] + s.fractions[3], 1.0, 1e-9);
  }
}

TEST(MeadowBoundaryTest, Examples) {
  EXPECT_TRUE(meadow_boundary(LabelMask(20, 20, Label::Rocks)).empty());

  LabelMask rect(30, 20);
  for (int y = 4; y <= 12; ++y)
    for (int x = 5; x <= 20; ++x) rect.set(x, y, Label::Posidonia);
  const auto rings = meadow_boundary(rect);
  ASSERT_EQ(rings.size(), 1u);
  const auto b = rings[0].bounds();
  EXPECT_EQ(b[0], 5);
  EXPECT_EQ(b[1], 4);
  EXPECT_EQ(b[2], 20);
  EXPECT_EQ(b[3], 12);

  // Small blob first in raster order, large blob second.
  LabelMask two(60, 60);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x) two.set(x, y, Label::Posidonia);
  for (int y = 30; y < 50; ++y)
    for (int x = 20; x < 45; ++x) two.set(x, y, Label::Posidonia);
  const auto ordered = meadow_boundary(two);
  ASSERT_EQ(ordered.size(), 2u);
  EXPECT_TRUE(point_in_polygon({30, 40}, ordered[0]));
  EXPECT_FALSE(point_in_polygon({5, 5}, ordered[0]));
}


TEST(BaselineSegmenterTest, SandIsBackground) {
  Raster img(40, 30, 3);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) img.set_rgb(x, y, {0.85, 0.78, 0.60});
  BaselineSegmenter seg(BaselineConfig::defaults());
  EXPECT_EQ(seg.segment(img).count(Label::Background), 1200u);
}

TEST(BaselineSegmenterTest, DarkGreenDisk) {
  const int w = 100, h = 80;
  Raster img(w, h, 3);
  std::size_t disk = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const bool in = (x - 50) * (x - 50) + (y - 40) * (y - 40) <= 20 * 20;
      disk += in ? 1 : 0;
      img.set_rgb(x, y, in ? std::array<double, 3>{0.10, 0.28, 0.12} : std::array<double, 3>{0.85, 0.78, 0.60});
    }
  BaselineSegmenter seg(BaselineConfig::defaults());
  const LabelMask m = seg.segment(img);
  EXPECT_EQ(m.at(50, 40), Label::Posidonia);
  EXPECT_EQ(m.at(2, 2), Label::Background);
  EXPECT_NEAR(static_cast<double>(m.count(Label::Posidonia)), static_cast<double>(disk), 0.1 * disk);
  EXPECT_EQ(m.count(Label::Posidonia) + m.count(Label::Background), m.pixel_count());
}

TEST(BaselineSegmenterTest, PriorityAndConfigErrors) {
  BaselineConfig cfg;
  cfg.smoothing = false;
  cfg.ranges = {{Label::Rocks, 0, 360, 0, 1, 0, 1}, {Label::Posidonia, 0, 360, 0, 1, 0, 1}};
  Raster img(1, 1, 3, 0.4);
  EXPECT_EQ(BaselineSegmenter(cfg).segment(img).at(0, 0), Label::Posidonia);

  cfg.priority_ordered = false;
  EXPECT_THROW(BaselineSegmenter{cfg}, ConfigError);
  cfg.ranges[1].val_min = 0.6;
  cfg.ranges[0].val_max = 0.5;
  EXPECT_NO_THROW(BaselineSegmenter{cfg});
  cfg.ranges.push_back({Label::Background, 0, 360, 0, 1, 0, 1});
  EXPECT_THROW(BaselineSegmenter{cfg}, ConfigError);
}

TEST(BaselineSegmenterTest, HueRangeWraps) {
  const HsvRange r{Label::Rocks, 340.0, 20.0, 0.0, 1.0, 0.0, 1.0};
  EXPECT_TRUE(r.contains({350.0, 0.5, 0.5}));
  EXPECT_TRUE(r.contains({10.0, 0.5, 0.5}));
  EXPECT_FALSE(r.contains({180.0, 0.5, 0.5}));
}

}  // namespace
}  // namespace seagrass
