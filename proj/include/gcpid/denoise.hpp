#pragma once

#include <cstddef>
#include <vector>

#include "gcpid/config.hpp"
#include "gcpid/image.hpp"
#include "gcpid/talg.hpp"

namespace gcpid {

/// tau = tau_scale * sigma * sqrt(2 ln(3 ps^2 K)); video multiplies the
/// count inside the log by cfg.frames.
double threshold_value(const DenoiseConfig& cfg);

/// Zeroes coefficients with |value| < tau (values equal to tau survive) and
/// records how many are left in retained_count.
talg::CoeffGroup hard_threshold(talg::CoeffGroup c, double tau);

/// Learn transforms from the group itself, threshold, invert.
RggbGroup denoise_group(const RggbGroup& g, double tau);

/// Per-frame numerator/weight accumulators for overlapping patch estimates.
class AggregationBuffer {
 public:
  AggregationBuffer(int frames, int height, int width, int channels = 3);

  /// Adds a ps x ps x C patch with unit weight at its own location.
  void accumulate(const PatchRef& at, const Tensor3& patch);

  [[nodiscard]] double min_weight() const;
  [[nodiscard]] double weight(int frame, int y, int x) const;

  /// numerator / weight; throws Error if some pixel was never covered.
  [[nodiscard]] Image resolve(int frame) const;

 private:
  int height_;
  int width_;
  int channels_;
  std::vector<Image> numerator_;
  std::vector<std::vector<double>> weight_;
};

struct DenoiseStats {
  std::size_t groups = 0;
  std::size_t retained_coefficients = 0;
  std::size_t total_coefficients = 0;
  double min_weight = 0.0;
};

/// Grouping, collaborative filtering and aggregation over the reference grid.
/// Throws SizeError for images smaller than ps.
Image denoise_image(const Image& noisy, const DenoiseConfig& cfg, DenoiseStats* stats = nullptr);

/// Spatio-temporal variant: every frame's reference grid searches the same
/// window in all frames, and tau uses N_f = frame count.
VideoSequence denoise_video(const VideoSequence& noisy, const DenoiseConfig& cfg,
                            DenoiseStats* stats = nullptr);

}  // namespace gcpid
