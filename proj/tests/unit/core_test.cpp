#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gcpid/config.hpp"
#include "gcpid/error.hpp"
#include "gcpid/image.hpp"
#include "support.hpp"

namespace gcpid {
namespace {

using testing::random_image;

TEST(Image, PlanarLayoutAndShape) {
  Image img(2, 3, 3);
  EXPECT_EQ(img.size(), 18u);
  img.at(1, 1, 2) = 7.0;
  EXPECT_EQ(img.data()[(1 * 2 + 1) * 3 + 2], 7.0);
  EXPECT_EQ(img.plane(1)[5], 7.0);
  EXPECT_THROW(Image(2, 2, 2), ShapeError);
  EXPECT_THROW(Image(2, 2, 3, std::vector<double>(5)), ShapeError);
}

TEST(Image, VideoRequiresMatchingFrames) {
  EXPECT_THROW(VideoSequence(std::vector<Image>{}), ShapeError);
  EXPECT_THROW(VideoSequence({Image(4, 4, 3), Image(4, 5, 3)}), ShapeError);
  VideoSequence v({Image(4, 4, 3), Image(4, 4, 3)});
  EXPECT_EQ(v.frame_count(), 2);
}

TEST(ExtractPatch, WholeImageAtOrigin) {
  std::mt19937_64 rng(1);
  const Image img = random_image(8, 8, rng);
  const Tensor3 p = extract_patch(img, {0, 0, 0}, 8);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) EXPECT_EQ(p(y, x, c), img.at(c, y, x));
}

TEST(ExtractPatch, BottomRightCornerAndOutOfBounds) {
  std::mt19937_64 rng(2);
  const Image img = random_image(13, 11, rng);
  const Tensor3 p = extract_patch(img, {0, 5, 3}, 8);
  EXPECT_EQ(p(7, 7, 2), img.at(2, 12, 10));
  EXPECT_THROW(extract_patch(img, {0, 6, 0}, 8), BoundsError);
  EXPECT_THROW(extract_patch(img, {0, 0, 4}, 8), BoundsError);
  EXPECT_THROW(extract_patch(img, {0, -1, 0}, 8), BoundsError);
}

TEST(ExtractPatch, ReadsOnlyTheFootprint) {
  // Canary border: a NaN frame around the footprint must never leak in.
  Image img(12, 12, 3, std::nan(""));
  for (int c = 0; c < 3; ++c)
    for (int y = 2; y < 10; ++y)
      for (int x = 2; x < 10; ++x) img.at(c, y, x) = c * 100 + y * 10 + x;
  const Tensor3 p = extract_patch(img, {0, 2, 2}, 8);
  EXPECT_TRUE(p.all_finite());
  EXPECT_EQ(p(0, 0, 1), 122.0);
}

TEST(Rggb, ConstantAndKnownChannels) {
  Tensor3 rgb(4, 4, 3);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      rgb(i, j, 0) = 1.0;
      rgb(i, j, 1) = 2.0;
      rgb(i, j, 2) = 3.0;
    }
  const Tensor3 rggb = rgb_to_rggb(rgb);
  ASSERT_EQ(rggb.depth(), 4);
  EXPECT_EQ(rggb(2, 3, 0), 1.0);
  EXPECT_EQ(rggb(2, 3, 1), 2.0);
  EXPECT_EQ(rggb(2, 3, 2), 2.0);
  EXPECT_EQ(rggb(2, 3, 3), 3.0);
}

TEST(Rggb, RandomPlanesAndExactRoundtrip) {
  std::mt19937_64 rng(3);
  const Tensor3 rgb = testing::random_tensor(8, 8, 3, rng, 50.0);
  const Tensor3 rggb = rgb_to_rggb(rgb);
  EXPECT_EQ(rggb.slice(0), rgb.slice(0));
  EXPECT_EQ(rggb.slice(1), rggb.slice(2));
  EXPECT_EQ(rggb.slice(3), rgb.slice(2));
  EXPECT_TRUE(rggb_to_rgb(rggb) == rgb);
}

TEST(Rggb, GreenMergeIsElementwiseMean) {
  std::mt19937_64 rng(4);
  Tensor3 rggb = testing::random_tensor(6, 6, 4, rng);
  const Tensor3 rgb = rggb_to_rgb(rggb);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      EXPECT_DOUBLE_EQ(rgb(i, j, 1), 0.5 * (rggb(i, j, 1) + rggb(i, j, 2)));

  Tensor3 flat(2, 2, 4);
  flat.slice(1).setConstant(4.0);
  flat.slice(2).setConstant(6.0);
  EXPECT_EQ(rggb_to_rgb(flat)(1, 1, 1), 5.0);
}

TEST(Group, SlicesMatchMembers) {
  std::mt19937_64 rng(5);
  const Image img = random_image(16, 16, rng);
  const std::vector<PatchRef> members = {{0, 0, 0}, {0, 3, 5}, {0, 8, 8}};
  const RggbGroup g = build_group(img, members, 8);
  ASSERT_EQ(g.size(), 3);
  for (std::size_t k = 0; k < members.size(); ++k) {
    EXPECT_TRUE(g.patches[k] == rgb_to_rggb(extract_patch(img, members[k], 8)));
  }
}

TEST(Awgn, ZeroSigmaIsIdentityAndSeedIsDeterministic) {
  std::mt19937_64 rng(6);
  const Image img = random_image(16, 16, rng);
  EXPECT_TRUE(add_awgn(img, 0.0, 9) == img);
  EXPECT_TRUE(add_awgn(img, 10.0, 9) == add_awgn(img, 10.0, 9));
  EXPECT_FALSE(add_awgn(img, 10.0, 9) == add_awgn(img, 10.0, 10));
  EXPECT_THROW(add_awgn(img, -1.0, 0), ConfigError);
}

TEST(Awgn, EmpiricalStdOnMillionSamples) {
  const Image flat(578, 577, 3, 128.0);  // 1,000,518 samples
  const Image noisy = add_awgn(flat, 25.0, 42);
  double sum = 0.0;
  double sq = 0.0;
  for (double v : noisy.data()) {
    sum += v - 128.0;
    sq += (v - 128.0) * (v - 128.0);
  }
  const double n = static_cast<double>(noisy.size());
  const double std = std::sqrt(sq / n - (sum / n) * (sum / n));
  EXPECT_GE(std, 24.8);
  EXPECT_LE(std, 25.2);
}

TEST(Awgn, NoClamping) {
  const Image dark(32, 32, 3, 0.0);
  const Image noisy = add_awgn(dark, 20.0, 1);
  EXPECT_LT(*std::min_element(noisy.data().begin(), noisy.data().end()), 0.0);
}

TEST(Awgn, PerChannelLevels) {
  const Image flat(200, 200, 3, 100.0);
  const Image noisy = add_awgn(flat, {30.0, 15.0, 0.0}, 3);
  auto plane_std = [&](int c) {
    double sq = 0.0;
    for (double v : noisy.plane(c)) sq += (v - 100.0) * (v - 100.0);
    return std::sqrt(sq / static_cast<double>(noisy.plane_size()));
  };
  EXPECT_NEAR(plane_std(0), 30.0, 0.5);
  EXPECT_NEAR(plane_std(1), 15.0, 0.25);
  EXPECT_EQ(plane_std(2), 0.0);
}

TEST(Quantize, RoundHalfUpThenClamp) {
  Image img(1, 6, 1, std::vector<double>{254.6, -3.0, 127.4, 255.5, 12.5, 40.0});
  const Raster8 r = quantize(img);
  EXPECT_EQ(r.data, (std::vector<std::uint8_t>{255, 0, 127, 255, 13, 40}));
  const Image back = to_image(r);
  EXPECT_TRUE(to_image(quantize(back)) == back);
}

TEST(Config, Validation) {
  DenoiseConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.patch_size, 8);
  EXPECT_EQ(cfg.window, 20);
  EXPECT_EQ(cfg.group_size, 30);
  EXPECT_EQ(DenoiseConfig::video_defaults().window, 16);
  auto bad = [](auto mutate) {
    DenoiseConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](DenoiseConfig& c) { c.patch_size = 1; }).validate(), ConfigError);
  EXPECT_THROW(bad([](DenoiseConfig& c) { c.group_size = 0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](DenoiseConfig& c) { c.window = 7; }).validate(), ConfigError);
  EXPECT_THROW(bad([](DenoiseConfig& c) { c.lambda = 0.0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](DenoiseConfig& c) { c.sigma = -1.0; }).validate(), ConfigError);
  EXPECT_THROW(bad([](DenoiseConfig& c) { c.stride = 0; }).validate(), ConfigError);
}

}  // namespace
}  // namespace gcpid
