#pragma once

#include <array>
#include <string>
#include <vector>

#include "gcpid/image.hpp"

namespace gcpid::metrics {

/// 10 log10(peak^2 / MSE) over all samples. Identical inputs give +infinity.
/// Throws ShapeError on mismatched shapes.
double psnr(const Image& a, const Image& b, double peak = 255.0);

/// Single-channel SSIM map mean: 11x11 Gaussian window (std 1.5, truncated and
/// renormalized), K1 = 0.01, K2 = 0.03, L = 255, valid region only.
double ssim_channel(std::span<const double> a, std::span<const double> b, int height,
                    int width);

/// Mean of per-channel SSIM. Needs both dimensions >= 11.
double ssim(const Image& a, const Image& b);

/// Per-channel 10 log10(signal power / noise power), noise = noisy - clean.
/// Channels without noise report +infinity.
std::array<double, 3> snr_per_channel(const Image& clean, const Image& noisy);

struct MetricsReport {
  std::string id;
  double psnr = 0.0;
  double ssim = 0.0;
  std::vector<double> channel_psnr;
  std::vector<double> channel_ssim;
};

/// Full report of `test` against `reference`. With quantize_first both images
/// are rounded to 8 bits before measuring, as a file-based evaluation would.
MetricsReport evaluate(const std::string& id, const Image& reference, const Image& test,
                       bool quantize_first = false);

}  // namespace gcpid::metrics
