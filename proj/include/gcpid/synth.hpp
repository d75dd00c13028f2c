#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gcpid/image.hpp"

namespace gcpid::synth {

// Seeded synthetic test images standing in for natural photographs:
// piecewise-smooth content with edges, texture and correlated color channels.
enum class Pattern {
  Gradient,      ///< smooth color ramps with a low-frequency ripple
  Checkerboard,  ///< shaded two-color checker
  Strokes,       ///< text-like dark strokes on a light background
  Blobs,         ///< overlapping soft color blobs
  Shapes,        ///< antialiased rectangles and discs over a ramp
};

inline constexpr Pattern kAllPatterns[] = {Pattern::Gradient, Pattern::Checkerboard,
                                           Pattern::Strokes, Pattern::Blobs, Pattern::Shapes};

std::string_view to_string(Pattern p);

/// 3-channel image with samples in [10, 245].
Image make_image(Pattern pattern, int height, int width, std::uint64_t seed);

struct NamedImage {
  std::string id;
  Image image;
};

/// `count` images cycling through every pattern, ids "synth-NN-<pattern>".
std::vector<NamedImage> make_corpus(int count, int height, int width, std::uint64_t seed);

}  // namespace gcpid::synth
