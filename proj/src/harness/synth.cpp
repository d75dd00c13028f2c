#include "gcpid/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "gcpid/error.hpp"

namespace gcpid::synth {

namespace {

using Color = std::array<double, 3>;

class Painter {
 public:
  Painter(int height, int width, std::uint64_t seed)
      : img_(height, width, 3), rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Luminance with a moderate per-channel offset, as in most photographs.
  Color color(double lum_lo = 40.0, double lum_hi = 215.0) {
    const double lum = uniform(lum_lo, lum_hi);
    return {lum + uniform(-45.0, 45.0), lum + uniform(-30.0, 30.0), lum + uniform(-45.0, 45.0)};
  }

  void set(int y, int x, const Color& c) {
    for (int ch = 0; ch < 3; ++ch) img_.at(ch, y, x) = c[static_cast<std::size_t>(ch)];
  }

  void blend(int y, int x, const Color& c, double alpha) {
    for (int ch = 0; ch < 3; ++ch) {
      double& v = img_.at(ch, y, x);
      v += alpha * (c[static_cast<std::size_t>(ch)] - v);
    }
  }

  void ramp() {
    const Color a = color();
    const Color b = color();
    const double angle = uniform(0.0, 2.0 * std::numbers::pi);
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    const double span = std::abs(dx) * width() + std::abs(dy) * height();
    const double ox = dx < 0 ? width() : 0.0;
    const double oy = dy < 0 ? height() : 0.0;
    for (int y = 0; y < height(); ++y) {
      for (int x = 0; x < width(); ++x) {
        const double t = ((x - ox) * dx + (y - oy) * dy) / span;
        Color c;
        for (std::size_t ch = 0; ch < 3; ++ch) c[ch] = a[ch] + t * (b[ch] - a[ch]);
        set(y, x, c);
      }
    }
  }

  Image finish() {
    for (double& v : img_.data()) v = std::clamp(v, 10.0, 245.0);
    return std::move(img_);
  }

  [[nodiscard]] int height() const { return img_.height(); }
  [[nodiscard]] int width() const { return img_.width(); }
  Image& image() { return img_; }

 private:
  Image img_;
  std::mt19937_64 rng_;
};

// Coverage of a pixel at signed distance d from an edge (1 inside, 0 outside).
double coverage(double d) { return std::clamp(0.5 - d, 0.0, 1.0); }

Image gradient(Painter& p) {
  p.ramp();
  const double fx = p.uniform(0.01, 0.05);
  const double fy = p.uniform(0.01, 0.05);
  const double phase = p.uniform(0.0, 6.28);
  const double amp = p.uniform(18.0, 30.0);
  const std::array<double, 3> tint = {p.uniform(0.7, 1.1), 1.0, p.uniform(0.7, 1.1)};
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      const double ripple = amp * std::sin(2.0 * std::numbers::pi * (fx * x + fy * y) + phase);
      for (int ch = 0; ch < 3; ++ch) {
        p.image().at(ch, y, x) += tint[static_cast<std::size_t>(ch)] * ripple;
      }
    }
  }
  return p.finish();
}

Image checkerboard(Painter& p) {
  const int cell = static_cast<int>(p.uniform(12.0, 28.0));
  const Color a = p.color(40.0, 110.0);
  const Color b = p.color(140.0, 215.0);
  const double shade_x = p.uniform(-0.25, 0.25) / p.width();
  const double shade_y = p.uniform(-0.25, 0.25) / p.height();
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      const Color& c = ((x / cell + y / cell) % 2 == 0) ? a : b;
      const double s = 1.0 + shade_x * (x - p.width() / 2.0) + shade_y * (y - p.height() / 2.0);
      p.set(y, x, {c[0] * s, c[1] * s, c[2] * s});
    }
  }
  return p.finish();
}

Image strokes(Painter& p) {
  p.ramp();
  // Lighten the background so strokes read as text.
  for (double& v : p.image().data()) v = 150.0 + 0.4 * v;
  const int count = std::max(8, p.height() * p.width() / 1600);
  for (int s = 0; s < count; ++s) {
    const Color ink = p.color(25.0, 90.0);
    const double x0 = p.uniform(0.0, p.width());
    const double y0 = p.uniform(0.0, p.height());
    const double len = p.uniform(8.0, 40.0);
    const double angle = p.uniform(0.0, std::numbers::pi);
    const double x1 = x0 + len * std::cos(angle);
    const double y1 = y0 + len * std::sin(angle);
    const double half = p.uniform(0.8, 2.0);
    const int ylo = std::max(0, static_cast<int>(std::min(y0, y1) - half - 2));
    const int yhi = std::min(p.height() - 1, static_cast<int>(std::max(y0, y1) + half + 2));
    const int xlo = std::max(0, static_cast<int>(std::min(x0, x1) - half - 2));
    const int xhi = std::min(p.width() - 1, static_cast<int>(std::max(x0, x1) + half + 2));
    const double vx = x1 - x0;
    const double vy = y1 - y0;
    const double vv = vx * vx + vy * vy;
    for (int y = ylo; y <= yhi; ++y) {
      for (int x = xlo; x <= xhi; ++x) {
        const double t = std::clamp(((x - x0) * vx + (y - y0) * vy) / vv, 0.0, 1.0);
        const double d = std::hypot(x - (x0 + t * vx), y - (y0 + t * vy)) - half;
        const double a = coverage(d);
        if (a > 0.0) p.blend(y, x, ink, a);
      }
    }
  }
  return p.finish();
}

Image blobs(Painter& p) {
  p.ramp();
  const int count = std::max(6, p.height() * p.width() / 5000);
  for (int b = 0; b < count; ++b) {
    const Color c = p.color();
    const double cx = p.uniform(0.0, p.width());
    const double cy = p.uniform(0.0, p.height());
    const double r = p.uniform(6.0, 30.0);
    for (int y = 0; y < p.height(); ++y) {
      for (int x = 0; x < p.width(); ++x) {
        const double d2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (r * r);
        if (d2 < 9.0) p.blend(y, x, c, 0.85 * std::exp(-d2));
      }
    }
  }
  return p.finish();
}

Image shapes(Painter& p) {
  p.ramp();
  const int count = std::max(8, p.height() * p.width() / 3000);
  for (int s = 0; s < count; ++s) {
    const Color c = p.color();
    const bool disc = p.uniform(0.0, 1.0) < 0.5;
    const double cx = p.uniform(0.0, p.width());
    const double cy = p.uniform(0.0, p.height());
    const double rx = p.uniform(5.0, 28.0);
    const double ry = disc ? rx : p.uniform(5.0, 28.0);
    const int ylo = std::max(0, static_cast<int>(cy - ry - 2));
    const int yhi = std::min(p.height() - 1, static_cast<int>(cy + ry + 2));
    const int xlo = std::max(0, static_cast<int>(cx - rx - 2));
    const int xhi = std::min(p.width() - 1, static_cast<int>(cx + rx + 2));
    for (int y = ylo; y <= yhi; ++y) {
      for (int x = xlo; x <= xhi; ++x) {
        const double d = disc ? std::hypot(x - cx, y - cy) - rx
                              : std::max(std::abs(x - cx) - rx, std::abs(y - cy) - ry);
        const double a = coverage(d);
        if (a > 0.0) p.blend(y, x, c, a);
      }
    }
  }
  return p.finish();
}

}  // namespace

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::Gradient:
      return "gradient";
    case Pattern::Checkerboard:
      return "checkerboard";
    case Pattern::Strokes:
      return "strokes";
    case Pattern::Blobs:
      return "blobs";
    case Pattern::Shapes:
      return "shapes";
  }
  return "unknown";
}

Image make_image(Pattern pattern, int height, int width, std::uint64_t seed) {
  if (height < 1 || width < 1) throw ShapeError("synth::make_image: empty size");
  Painter p(height, width, seed);
  switch (pattern) {
    case Pattern::Gradient:
      return gradient(p);
    case Pattern::Checkerboard:
      return checkerboard(p);
    case Pattern::Strokes:
      return strokes(p);
    case Pattern::Blobs:
      return blobs(p);
    case Pattern::Shapes:
      return shapes(p);
  }
  throw ConfigError("synth::make_image: unknown pattern");
}

std::vector<NamedImage> make_corpus(int count, int height, int width, std::uint64_t seed) {
  std::vector<NamedImage> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::vector<std::uint32_t> seeds(static_cast<std::size_t>(std::max(count, 0)) * 2);
  seq.generate(seeds.begin(), seeds.end());
  constexpr std::size_t n_patterns = std::size(kAllPatterns);
  for (int i = 0; i < count; ++i) {
    const Pattern pat = kAllPatterns[static_cast<std::size_t>(i) % n_patterns];
    const std::uint64_t s = (static_cast<std::uint64_t>(seeds[2 * static_cast<std::size_t>(i)]) << 32) |
                            seeds[2 * static_cast<std::size_t>(i) + 1];
    char id[64];
    std::snprintf(id, sizeof(id), "synth-%02d-%s", i, std::string(to_string(pat)).c_str());
    out.push_back({id, make_image(pat, height, width, s)});
  }
  return out;
}

}  // namespace gcpid::synth
