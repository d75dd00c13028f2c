#include "gcpid/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "gcpid/error.hpp"

namespace gcpid::metrics {

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;
constexpr double kRange = 255.0;

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> w{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    w[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
    sum += w[static_cast<std::size_t>(i)];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Separable 'valid' filtering: output is (h-10) x (w-10).
std::vector<double> filter_valid(const std::vector<double>& in, int h, int w,
                                 const std::array<double, kWindow>& taps) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> tmp(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y) {
    const double* row = in.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += taps[static_cast<std::size_t>(k)] * row[x + k];
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[static_cast<std::size_t>(k)] * tmp[static_cast<std::size_t>(y + k) * ow + x];
      }
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double psnr(const Image& a, const Image& b, double peak) {
  if (!a.same_shape(b)) throw ShapeError("psnr: images differ in shape");
  if (a.size() == 0) throw ShapeError("psnr: empty images");
  auto da = a.data();
  auto db = b.data();
  double sse = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(da.size());
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim_channel(std::span<const double> a, std::span<const double> b, int height,
                    int width) {
  if (height < kWindow || width < kWindow) {
    throw SizeError("ssim: both dimensions must be at least 11");
  }
  const std::size_t n = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  if (a.size() != n || b.size() != n) throw ShapeError("ssim: plane size mismatch");

  const auto taps = gaussian_taps();
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mu_x = filter_valid(x, height, width, taps);
  const auto mu_y = filter_valid(y, height, width, taps);
  const auto e_xx = filter_valid(xx, height, width, taps);
  const auto e_yy = filter_valid(yy, height, width, taps);
  const auto e_xy = filter_valid(xy, height, width, taps);

  const double c1 = (kK1 * kRange) * (kK1 * kRange);
  const double c2 = (kK2 * kRange) * (kK2 * kRange);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double sxx = e_xx[i] - mx * mx;
    const double syy = e_yy[i] - my * my;
    const double sxy = e_xy[i] - mx * my;
    const double num = (2.0 * mx * my + c1) * (2.0 * sxy + c2);
    const double den = (mx * mx + my * my + c1) * (sxx + syy + c2);
    total += num / den;
  }
  return total / static_cast<double>(mu_x.size());
}

double ssim(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw ShapeError("ssim: images differ in shape");
  double acc = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    acc += ssim_channel(a.plane(c), b.plane(c), a.height(), a.width());
  }
  return acc / a.channels();
}

std::array<double, 3> snr_per_channel(const Image& clean, const Image& noisy) {
  if (!clean.same_shape(noisy) || clean.channels() != 3) {
    throw ShapeError("snr_per_channel: expected two 3-channel images of equal shape");
  }
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    const auto s = clean.plane(c);
    const auto n = noisy.plane(c);
    double signal = 0.0;
    double noise = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      signal += s[i] * s[i];
      const double d = n[i] - s[i];
      noise += d * d;
    }
    out[static_cast<std::size_t>(c)] = noise == 0.0 ? std::numeric_limits<double>::infinity()
                                                    : 10.0 * std::log10(signal / noise);
  }
  return out;
}

MetricsReport evaluate(const std::string& id, const Image& reference, const Image& test,
                       bool quantize_first) {
  if (!reference.same_shape(test)) throw ShapeError("evaluate: images differ in shape");
  const Image ref = quantize_first ? to_image(quantize(reference)) : reference;
  const Image img = quantize_first ? to_image(quantize(test)) : test;

  MetricsReport r;
  r.id = id;
  r.psnr = psnr(ref, img);
  r.ssim = ssim(ref, img);
  for (int c = 0; c < ref.channels(); ++c) {
    const Image a(ref.height(), ref.width(), 1,
                  std::vector<double>(ref.plane(c).begin(), ref.plane(c).end()));
    const Image b(img.height(), img.width(), 1,
                  std::vector<double>(img.plane(c).begin(), img.plane(c).end()));
    r.channel_psnr.push_back(psnr(a, b));
    r.channel_ssim.push_back(ssim_channel(ref.plane(c), img.plane(c), ref.height(), ref.width()));
  }
  return r;
}

}  // namespace gcpid::metrics
