#include <algorithm>
#include <cmath>
#include <random>

#include "gcpid/error.hpp"
#include "gcpid/image.hpp"

namespace gcpid {

Image add_awgn(const Image& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("add_awgn: sigma must be >= 0");
  Image out = img;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (double& v : out.data()) v += noise(rng);
  return out;
}

Image add_awgn(const Image& img, const std::array<double, 3>& sigma_rgb,
               std::uint64_t seed) {
  if (img.channels() != 3) throw ShapeError("add_awgn: per-channel sigma needs 3 channels");
  for (double s : sigma_rgb) {
    if (!(s >= 0.0)) throw ConfigError("add_awgn: sigma must be >= 0");
  }
  Image out = img;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < 3; ++c) {
    const double s = sigma_rgb[static_cast<std::size_t>(c)];
    for (double& v : out.plane(c)) v += s * unit(rng);
  }
  return out;
}

Raster8 quantize(const Image& img) {
  Raster8 r{img.height(), img.width(), img.channels(), {}};
  r.data.resize(img.size());
  auto src = img.data();
  std::transform(src.begin(), src.end(), r.data.begin(), [](double v) {
    const double q = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
    return static_cast<std::uint8_t>(q);
  });
  return r;
}

Image to_image(const Raster8& raster) {
  std::vector<double> data(raster.data.begin(), raster.data.end());
  return Image(raster.height, raster.width, raster.channels, std::move(data));
}

}  // namespace gcpid
