#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gcpid/error.hpp"
#include "gcpid/search.hpp"
#include "gcpid/synth.hpp"
#include "support.hpp"

namespace gcpid::search {
namespace {

using gcpid::testing::random_image;

std::vector<int> rows_of(const std::vector<PatchRef>& grid) {
  std::set<int> rows;
  for (const auto& r : grid) rows.insert(r.row);
  return {rows.begin(), rows.end()};
}

Tensor3 constant_patch(double r, double g, double b, Index ps = 8) {
  Tensor3 t(ps, ps, 3);
  t.slice(0).setConstant(r);
  t.slice(1).setConstant(g);
  t.slice(2).setConstant(b);
  return t;
}

DenoiseConfig config(int k, int window = 20) {
  DenoiseConfig cfg;
  cfg.group_size = k;
  cfg.window = window;
  return cfg;
}

void expect_contract(const std::vector<Candidate>& found, const Image& img, const PatchRef& ref,
                     const DenoiseConfig& cfg) {
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found[0].ref, ref);
  EXPECT_EQ(found[0].distance, 0.0);
  const int n = window_candidate_count(img.height(), img.width(), ref, cfg.patch_size,
                                       cfg.window);
  EXPECT_EQ(static_cast<int>(found.size()), std::min(cfg.group_size, n));
  std::set<PatchRef> unique;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& c = found[i];
    EXPECT_TRUE(unique.insert(c.ref).second);
    EXPECT_GE(c.ref.row, 0);
    EXPECT_GE(c.ref.col, 0);
    EXPECT_LE(c.ref.row + cfg.patch_size, img.height());
    EXPECT_LE(c.ref.col + cfg.patch_size, img.width());
    EXPECT_GE(c.distance, 0.0);
    if (i > 1) EXPECT_LE(found[i - 1].distance, c.distance);
  }
}

TEST(ReferenceGrid, Examples) {
  EXPECT_EQ(reference_grid(8, 8, 8, 4), (std::vector<PatchRef>{{0, 0, 0}}));
  EXPECT_EQ(reference_grid(8, 8, 8, 3).size(), 1u);
  EXPECT_EQ(rows_of(reference_grid(12, 12, 8, 4)), (std::vector<int>{0, 4}));
  EXPECT_EQ(rows_of(reference_grid(13, 12, 8, 4)), (std::vector<int>{0, 4, 5}));
  EXPECT_THROW(reference_grid(7, 12, 8, 4), SizeError);
  const auto grid = reference_grid(20, 20, 8, 4, 3);
  EXPECT_TRUE(std::all_of(grid.begin(), grid.end(), [](const PatchRef& r) { return r.frame == 3; }));
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
}

TEST(ReferenceGrid, CoversEveryPixel) {
  for (int h : {8, 9, 17, 31}) {
    for (int stride : {1, 3, 4, 7}) {
      std::vector<int> hits(static_cast<std::size_t>(h) * 23, 0);
      for (const auto& r : reference_grid(h, 23, 8, stride)) {
        for (int y = 0; y < 8; ++y)
          for (int x = 0; x < 8; ++x) ++hits[static_cast<std::size_t>(r.row + y) * 23 + r.col + x];
      }
      EXPECT_EQ(std::count(hits.begin(), hits.end(), 0), 0) << h << " " << stride;
    }
  }
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(channel_dominance(constant_patch(7, 7, 7), 0.8));
  EXPECT_FALSE(channel_dominance(constant_patch(3, 0, 0), 0.8));
  EXPECT_TRUE(channel_dominance(constant_patch(5, 4, 0), 0.8));  // ||G|| = 0.8 ||R||
  EXPECT_FALSE(channel_dominance(constant_patch(5, 3.99, 0), 0.8));
  EXPECT_FALSE(channel_dominance(constant_patch(0, 4, 5.01), 0.8));
}

TEST(Distance, Examples) {
  std::mt19937_64 rng(40);
  const Tensor3 a = testing::random_tensor(8, 8, 3, rng, 20.0);
  for (auto s : {SearchScheme::GreenGuided, SearchScheme::GreenOnly, SearchScheme::OpponentMean,
                 SearchScheme::FullRGB}) {
    EXPECT_EQ(patch_distance(a, a, s, 0.8), 0.0);
  }

  Tensor3 ref = constant_patch(10, 50, 10);
  Tensor3 other = ref;
  other.slice(0).setConstant(30);
  EXPECT_EQ(patch_distance(ref, other, SearchScheme::GreenGuided, 0.8), 0.0);
  EXPECT_NEAR(patch_distance(ref, other, SearchScheme::FullRGB, 0.8), 8.0 * 20.0, 1e-12);

  // Non-dominant reference: distance of the per-pixel mean planes.
  const Tensor3 p = constant_patch(90, 0, 90);  // mean 60
  const Tensor3 q = constant_patch(30, 0, 30);  // mean 20
  EXPECT_NEAR(patch_distance(p, q, SearchScheme::GreenGuided, 0.8), 8.0 * 40.0, 1e-9);
  EXPECT_NEAR(patch_distance(p, q, SearchScheme::OpponentMean, 0.8), 8.0 * 40.0, 1e-9);
  EXPECT_EQ(patch_distance(p, q, SearchScheme::GreenOnly, 0.8), 0.0);
}

TEST(Scheme, NamesRoundtrip) {
  for (auto s : {SearchScheme::GreenGuided, SearchScheme::GreenOnly, SearchScheme::OpponentMean,
                 SearchScheme::FullRGB}) {
    EXPECT_EQ(scheme_from_string(to_string(s)), s);
  }
  EXPECT_THROW(scheme_from_string("luma"), ConfigError);
}

TEST(Window, CandidateCountMatchesEnumeration) {
  for (const PatchRef ref : {PatchRef{0, 0, 0}, PatchRef{0, 20, 13}, PatchRef{0, 32, 40}}) {
    int expected = 0;
    for (int r = 0; r <= 40 - 8; ++r)
      for (int c = 0; c <= 48 - 8; ++c)
        if (r >= ref.row - 10 && r <= ref.row + 9 && c >= ref.col - 10 && c <= ref.col + 9)
          ++expected;
    EXPECT_EQ(window_candidate_count(40, 48, ref, 8, 20), expected);
  }
  EXPECT_EQ(window_candidate_count(64, 64, {0, 30, 30}, 8, 20), 400);
}

TEST(FindSimilar, ConstantImageUsesRowMajorTieBreak) {
  const Image img(40, 40, 3, 100.0);
  const PatchRef ref{0, 16, 16};
  const DenoiseConfig cfg = config(30);
  const auto found = find_similar(img, ref, cfg);
  expect_contract(found, img, ref, cfg);
  std::vector<PatchRef> expected{ref};
  for (int r = 6; r <= 25 && expected.size() < 30; ++r)
    for (int c = 6; c <= 25 && expected.size() < 30; ++c)
      if (PatchRef{0, r, c} != ref) expected.push_back({0, r, c});
  for (std::size_t i = 0; i < found.size(); ++i) EXPECT_EQ(found[i].ref, expected[i]) << i;
}

TEST(FindSimilar, ExactCopyRanksFirst) {
  std::mt19937_64 rng(41);
  Image img = random_image(48, 48, rng);
  const PatchRef ref{0, 20, 20};
  const PatchRef copy{0, 27, 14};
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) img.at(c, copy.row + y, copy.col + x) = img.at(c, ref.row + y, ref.col + x);
  for (auto s : {SearchScheme::GreenGuided, SearchScheme::FullRGB, SearchScheme::OpponentMean}) {
    const auto found = find_similar(img, ref, config(30), s);
    EXPECT_EQ(found[1].ref, copy);
    EXPECT_EQ(found[1].distance, 0.0);
    EXPECT_GT(found[2].distance, 0.0);
  }
}

TEST(FindSimilar, CornerWithFewCandidates) {
  std::mt19937_64 rng(42);
  const Image img = random_image(12, 12, rng);
  const DenoiseConfig cfg = config(30);
  const auto found = find_similar(img, {0, 0, 0}, cfg);
  EXPECT_EQ(found.size(), 25u);
  expect_contract(found, img, {0, 0, 0}, cfg);
}

TEST(FindSimilar, ContractOnRandomImages) {
  std::mt19937_64 rng(43);
  const Image img = random_image(50, 45, rng);
  for (const auto& ref : reference_grid(50, 45, 8, 7)) {
    for (int k : {1, 10, 30, 60}) {
      const DenoiseConfig cfg = config(k);
      expect_contract(find_similar(img, ref, cfg, SearchScheme::GreenGuided), img, ref, cfg);
    }
  }
}

TEST(FindSimilar, GreenGuidedEqualsGreenOnlyForDominantReference) {
  std::mt19937_64 rng(44);
  Image img = random_image(48, 48, rng, 0.0, 60.0);
  for (double& v : img.plane(1)) v += 120.0;  // green dominant everywhere
  for (const auto& ref : reference_grid(48, 48, 8, 8)) {
    const auto a = find_similar(img, ref, config(30), SearchScheme::GreenGuided);
    const auto b = find_similar(img, ref, config(30), SearchScheme::GreenOnly);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].ref, b[i].ref);
  }
}

TEST(FindSimilarVideo, SingleFrameMatchesImageSearch) {
  std::mt19937_64 rng(45);
  const Image img = random_image(40, 40, rng);
  const VideoSequence video({img});
  for (const auto& ref : reference_grid(40, 40, 8, 8)) {
    const auto a = find_similar(img, ref, config(30));
    const auto b = find_similar_video(video, ref, config(30));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].ref, b[i].ref);
      EXPECT_EQ(a[i].distance, b[i].distance);
    }
  }
}

TEST(FindSimilarVideo, StaticSceneOrdersByFrame) {
  std::mt19937_64 rng(46);
  const Image img = random_image(40, 40, rng);
  const VideoSequence video({img, img, img});
  const PatchRef ref{1, 16, 16};
  const auto found = find_similar_video(video, ref, config(30, 16));
  EXPECT_EQ(found[0].ref, ref);
  // The same position in the other frames is an exact copy, frame order.
  EXPECT_EQ(found[1].ref, (PatchRef{0, 16, 16}));
  EXPECT_EQ(found[2].ref, (PatchRef{2, 16, 16}));
  EXPECT_EQ(found[2].distance, 0.0);
  // Each spatial position appears in all frames with identical distance.
  for (std::size_t i = 3; i + 2 < found.size(); i += 3) {
    EXPECT_EQ(found[i].ref.frame, 0);
    EXPECT_EQ(found[i + 1].ref.frame, 1);
    EXPECT_EQ(found[i + 2].ref.frame, 2);
    EXPECT_EQ(found[i].distance, found[i + 2].distance);
    EXPECT_EQ(found[i].ref.row, found[i + 1].ref.row);
    EXPECT_EQ(found[i].ref.col, found[i + 2].ref.col);
  }
}

TEST(FindSimilarVideo, CopyInAnotherFrameIsIncluded) {
  std::mt19937_64 rng(47);
  const Image a = random_image(40, 40, rng);
  Image b = random_image(40, 40, rng);
  const PatchRef ref{0, 10, 10};
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) b.at(c, 14 + y, 7 + x) = a.at(c, 10 + y, 10 + x);
  const auto found = find_similar_video(VideoSequence({a, b}), ref, config(30, 16));
  EXPECT_EQ(found[1].ref, (PatchRef{1, 14, 7}));
  EXPECT_EQ(found[1].distance, 0.0);
}

TEST(SampleReferences, ReproducibleAndInBounds) {
  const auto a = sample_references(30, 40, 8, 200, 5);
  EXPECT_EQ(a, sample_references(30, 40, 8, 200, 5));
  EXPECT_NE(a, sample_references(30, 40, 8, 200, 6));
  for (const auto& r : a) {
    EXPECT_GE(r.row, 0);
    EXPECT_LE(r.row, 22);
    EXPECT_GE(r.col, 0);
    EXPECT_LE(r.col, 32);
  }
}

TEST(SuccessRate, NoiselessFullRgbIsPerfect) {
  const Image img = synth::make_image(synth::Pattern::Shapes, 64, 64, 3);
  EXPECT_EQ(success_rate(img, img, config(60), SearchScheme::FullRGB, 200, 1), 1.0);
}

TEST(SuccessRate, Deterministic) {
  const Image img = synth::make_image(synth::Pattern::Strokes, 64, 64, 3);
  const Image noisy = add_awgn(img, {30.0, 15.0, 30.0}, 9);
  const double a = success_rate(img, noisy, config(60), SearchScheme::GreenGuided, 200, 4);
  EXPECT_EQ(a, success_rate(img, noisy, config(60), SearchScheme::GreenGuided, 200, 4));
  EXPECT_GT(a, 0.0);
  EXPECT_LE(a, 1.0);
}

TEST(SuccessRate, OverwhelmingNoiseApproachesRandomBaseline) {
  // The reference is in both sets; the other K-1 members of the noisy set
  // are a uniform draw from the N-1 remaining candidates, so the expected
  // overlap is (1 + (K-1)^2 / (N-1)) / K for a window of N candidates.
  const Image clean = synth::make_image(synth::Pattern::Blobs, 64, 64, 8);
  const Image noisy = add_awgn(Image(64, 64, 3, 128.0), 1e4, 21);
  const DenoiseConfig cfg = config(30);
  const auto refs = sample_references(64, 64, 8, 600, 2);
  double baseline = 0.0;
  for (const auto& r : refs) {
    const double n = window_candidate_count(64, 64, r, 8, cfg.window);
    const double k = std::min<double>(cfg.group_size, n);
    baseline += (1.0 + (k - 1.0) * (k - 1.0) / (n - 1.0)) / k;
  }
  baseline /= static_cast<double>(refs.size());
  const double rate = search_overlap(clean, noisy, refs, cfg, SearchScheme::FullRGB);
  EXPECT_NEAR(rate, baseline, 0.02);
}

}  // namespace
}  // namespace gcpid::search
