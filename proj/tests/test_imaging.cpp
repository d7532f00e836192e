#include <cmath>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "seagrass/error.hpp"
#include "seagrass/imaging.hpp"
#include "seagrass/pnm.hpp"
#include "seagrass/rng.hpp"

namespace seagrass {
namespace {

Raster random_raster(Rng& rng, int w, int h, int channels) {
  Raster img(w, h, channels);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c) img.set(x, y, c, rng.uniform01());
  return img;
}

Raster gray_row(std::initializer_list<double> values) {
  Raster img(static_cast<int>(values.size()), 1, 1);
  int x = 0;
  for (double v : values) img.set(x++, 0, 0, v);
  return img;
}

Raster single_pixel(double r, double g, double b) {
  Raster img(1, 1, 3);
  img.set_rgb(0, 0, {r, g, b});
  return img;
}

TEST(RasterTest, SetClampsToUnitInterval) {
  Raster img(2, 2, 1);
  img.set(0, 0, 0, 1.5);
  img.set(1, 0, 0, -0.2);
  EXPECT_EQ(img.at(0, 0), 1.0);
  EXPECT_EQ(img.at(1, 0), 0.0);
  EXPECT_EQ(img.data().size(), 4u);
  EXPECT_THROW(Raster(0, 3, 1), InvalidInput);
  EXPECT_THROW(Raster(3, 3, 2), InvalidInput);
}

TEST(ToHsvTest, PrimaryAndGrayPixels) {
  auto red = to_hsv(single_pixel(1, 0, 0));
  EXPECT_DOUBLE_EQ(red.hue[0], 0.0);
  EXPECT_DOUBLE_EQ(red.saturation[0], 1.0);
  EXPECT_DOUBLE_EQ(red.value[0], 1.0);

  auto gray = to_hsv(single_pixel(0.5, 0.5, 0.5));
  EXPECT_DOUBLE_EQ(gray.hue[0], 0.0);
  EXPECT_DOUBLE_EQ(gray.saturation[0], 0.0);
  EXPECT_DOUBLE_EQ(gray.value[0], 0.5);

  // Blue is the max channel: h = 60 * ((r - g) / delta + 4) = 240.
  auto blue = to_hsv(single_pixel(0, 0, 1));
  EXPECT_DOUBLE_EQ(blue.hue[0], 240.0);
  EXPECT_DOUBLE_EQ(blue.saturation[0], 1.0);
  EXPECT_DOUBLE_EQ(blue.value[0], 1.0);
}

TEST(ToHsvTest, RejectsSingleChannel) { EXPECT_THROW(to_hsv(Raster(2, 2, 1)), InvalidInput); }

TEST(ToHsvTest, ValueIsExactChannelMax) {
  Rng rng(11);
  const Raster img = random_raster(rng, 17, 13, 3);
  const HsvRaster hsv = to_hsv(img);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const auto rgb = img.rgb(x, y);
      EXPECT_EQ(hsv.value[hsv.index(x, y)], std::max({rgb[0], rgb[1], rgb[2]}));
    }
}

TEST(ToHsvTest, RoundTripThroughRgb) {
  Rng rng(5);
  const Raster img = random_raster(rng, 9, 9, 3);
  const Raster back = from_hsv(to_hsv(img));
  for (std::size_t i = 0; i < img.data().size(); ++i) EXPECT_NEAR(back.data()[i], img.data()[i], 1e-12);
}

TEST(EqualizeTest, ConstantImagePassesThrough) {
  Raster img(5, 4, 1, 0.3);
  EXPECT_EQ(equalize_histogram(img, 256), img);
  Raster color(3, 3, 3, 0.3);
  EXPECT_EQ(equalize_histogram(color, 256), color);
}

TEST(EqualizeTest, UniformRampIsFixedPoint) {
  const Raster out = equalize_histogram(gray_row({0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}), 256);
  const double expected[] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  for (int x = 0; x < 4; ++x) EXPECT_NEAR(out.at(x, 0), expected[x], 1.0 / 255.0);
}

TEST(EqualizeTest, TwoLevelImageStretchesToExtremes) {
  // cdf_min = 0.75, cdf(0.8) = 1: dark -> 0, bright -> 1.
  const Raster out = equalize_histogram(gray_row({0.2, 0.2, 0.2, 0.8}), 256);
  EXPECT_DOUBLE_EQ(out.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(out.at(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(out.at(3, 0), 1.0);
}

TEST(EqualizeTest, PreservesOrderingOnGrayAndValueChannel) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Raster gray = random_raster(rng, 16, 16, 1);
    const Raster eq = equalize_histogram(gray, 64);
    for (std::size_t i = 0; i < gray.data().size(); ++i)
      for (std::size_t j = 0; j < gray.data().size(); ++j)
        if (gray.data()[i] <= gray.data()[j]) {
          ASSERT_LE(eq.data()[i], eq.data()[j]);
        }

    const Raster color = random_raster(rng, 8, 8, 3);
    const HsvRaster before = to_hsv(color);
    const HsvRaster after = to_hsv(equalize_histogram(color, 256));
    for (std::size_t i = 0; i < before.value.size(); ++i)
      for (std::size_t j = 0; j < before.value.size(); ++j)
        if (before.value[i] <= before.value[j]) {
          ASSERT_LE(after.value[i], after.value[j] + 1e-12);
        }
  }
}

TEST(EqualizeTest, ColorKeepsHue) {
  Raster img(2, 1, 3);
  img.set_rgb(0, 0, {0.2, 0.1, 0.05});
  img.set_rgb(1, 0, {0.1, 0.6, 0.3});
  const HsvRaster before = to_hsv(img);
  const HsvRaster after = to_hsv(equalize_histogram(img, 256));
  EXPECT_NEAR(after.hue[1], before.hue[1], 1e-9);
  EXPECT_NEAR(after.saturation[1], before.saturation[1], 1e-9);
  EXPECT_DOUBLE_EQ(after.value[1], 1.0);
}

TEST(EqualizeTest, RejectsTooFewBins) { EXPECT_THROW(equalize_histogram(Raster(2, 2, 1), 1), InvalidParameter); }

TEST(GammaTest, IdentityAndFixedPoints) {
  Rng rng(3);
  const Raster img = random_raster(rng, 6, 5, 3);
  EXPECT_EQ(gamma_correct(img, 1.0), img);
  const Raster ends = gamma_correct(gray_row({0.0, 1.0}), 2.7);
  EXPECT_EQ(ends.at(0, 0), 0.0);
  EXPECT_EQ(ends.at(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(gamma_correct(gray_row({0.25}), 0.5).at(0, 0), 0.5);
}

TEST(GammaTest, RejectsNonPositiveExponent) {
  EXPECT_THROW(gamma_correct(Raster(1, 1, 1), 0.0), InvalidParameter);
  EXPECT_THROW(gamma_correct(Raster(1, 1, 1), -1.0), InvalidParameter);
  EXPECT_THROW(gamma_correct(Raster(1, 1, 1), NAN), InvalidParameter);
}

TEST(GammaTest, InverseExponentRoundTrip) {
  Rng rng(8);
  for (double g : {0.4, 1.5, 2.2, 3.0}) {
    Raster img = random_raster(rng, 10, 10, 3);
    const Raster back = gamma_correct(gamma_correct(img, g), 1.0 / g);
    for (std::size_t i = 0; i < img.data().size(); ++i)
      if (img.data()[i] > 0.0) {
        EXPECT_NEAR(back.data()[i], img.data()[i], 1e-9);
      }
  }
}

TEST(AttenuateTest, ZeroPathAndZeroCoefficientAreIdentity) {
  Rng rng(1);
  const Raster img = random_raster(rng, 7, 7, 3);
  WaterModel water = WaterModel::preset("coastal_5");
  EXPECT_EQ(attenuate(img, water, 0.0), img);
  water.attenuation = {0.0, 0.0, 0.0};
  EXPECT_EQ(attenuate(img, water, 12.0), img);
}

TEST(AttenuateTest, HalvesAtOneLn2PathLength) {
  WaterModel water;
  water.attenuation = {std::numbers::ln2, std::numbers::ln2, std::numbers::ln2};
  const Raster out = attenuate(Raster(1, 1, 3, 1.0), water, 1.0);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(out.at(0, 0, c), 0.5, 1e-12);
}

TEST(AttenuateTest, ContractsTowardVeil) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    WaterModel water;
    for (int k = 0; k < 3; ++k) {
      water.attenuation[k] = rng.uniform(0.0, 1.0);
      water.backscatter_veil[k] = rng.uniform01();
    }
    const Raster img = random_raster(rng, 8, 8, 3);
    const double path = rng.uniform(0.0, 20.0);
    const Raster out = attenuate(img, water, path);
    const Raster further = attenuate(img, water, path + 1.0);
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x)
        for (int c = 0; c < 3; ++c) {
          const double veil = water.backscatter_veil[c];
          EXPECT_LE(std::fabs(out.at(x, y, c) - veil), std::fabs(img.at(x, y, c) - veil) + 1e-15);
          EXPECT_LE(std::fabs(further.at(x, y, c) - veil), std::fabs(out.at(x, y, c) - veil) + 1e-15);
        }
  }
}

TEST(AttenuateTest, RejectsNegativePath) {
  EXPECT_THROW(attenuate(Raster(1, 1, 3), WaterModel{}, -1.0), InvalidParameter);
}

TEST(SpeckleTest, ZeroDensityIsIdentity) {
  WaterModel water;
  water.speckle_density = 0.0;
  Raster img(50, 40, 3, 0.4);
  EXPECT_EQ(add_speckle(img, water), img);
}

TEST(SpeckleTest, DeterministicForSeed) {
  WaterModel water;
  water.speckle_density = 5000.0;
  water.rng_seed = 77;
  Raster img(64, 64, 3, 0.4);
  const Raster first = add_speckle(img, water);
  EXPECT_EQ(first, add_speckle(img, water));
  water.rng_seed = 78;
  EXPECT_NE(first, add_speckle(img, water));
}

TEST(SpeckleTest, MegapixelCount) {
  WaterModel water;
  water.speckle_density = 10.0;
  water.rng_seed = 4;
  const Raster img(1000, 1000, 3, 0.3);
  const Raster out = add_speckle(img, water);
  int brighter = 0;
  for (int y = 0; y < 1000; ++y)
    for (int x = 0; x < 1000; ++x)
      if (out.at(x, y, 0) > img.at(x, y, 0)) ++brighter;
  EXPECT_GE(brighter, 1);
  EXPECT_LE(brighter, 10);
}

TEST(WaterModelTest, PresetsAreValid) {
  for (const auto& name : WaterModel::preset_names()) EXPECT_TRUE(WaterModel::preset(name).violations().empty()) << name;
  EXPECT_THROW(WaterModel::preset("swamp"), ConfigError);
  WaterModel bad;
  bad.attenuation[1] = -0.1;
  bad.backscatter_veil[2] = 1.5;
  EXPECT_EQ(bad.violations().size(), 2u);
}

TEST(PnmTest, RasterRoundTripQuantizes) {
  const auto dir = std::filesystem::temp_directory_path() / "seagrass_pnm_test";
  std::filesystem::create_directories(dir);
  Raster color(3, 2, 3);
  color.set_rgb(0, 0, {1.0, 0.5, 0.0});
  color.set_rgb(2, 1, {0.2, 0.4, 0.6});
  pnm::write_raster(dir / "c.ppm", color);
  const Raster back = pnm::read_raster(dir / "c.ppm");
  ASSERT_EQ(back.channels(), 3);
  for (std::size_t i = 0; i < color.data().size(); ++i) EXPECT_NEAR(back.data()[i], color.data()[i], 0.5 / 255.0);

  Raster gray(4, 1, 1, 0.25);
  pnm::write_raster(dir / "g.pgm", gray);
  EXPECT_EQ(pnm::read_raster(dir / "g.pgm").channels(), 1);
  EXPECT_THROW(pnm::read_raster(dir / "missing.pgm"), LoadError);
}

}  // namespace
}  // namespace seagrass
