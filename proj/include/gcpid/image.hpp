#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gcpid/tensor.hpp"

namespace gcpid {

/// Planar floating point raster. Samples live on the [0, 255] scale;
/// plane c occupies data()[c*H*W, (c+1)*H*W) in row-major order.
class Image {
 public:
  Image() = default;
  Image(int height, int width, int channels, double fill = 0.0);
  Image(int height, int width, int channels, std::vector<double> data);

  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int channels() const noexcept { return channels_; }
  [[nodiscard]] std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

  double& at(int c, int y, int x) { return data_[index(c, y, x)]; }
  [[nodiscard]] double at(int c, int y, int x) const { return data_[index(c, y, x)]; }

  [[nodiscard]] std::span<double> plane(int c);
  [[nodiscard]] std::span<const double> plane(int c) const;

  [[nodiscard]] std::span<double> data() noexcept { return data_; }
  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

  [[nodiscard]] bool same_shape(const Image& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }
  [[nodiscard]] bool all_finite() const;

  friend bool operator==(const Image& a, const Image& b) = default;

 private:
  [[nodiscard]] std::size_t index(int c, int y, int x) const noexcept {
    return (static_cast<std::size_t>(c) * static_cast<std::size_t>(height_) +
            static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Ordered frames of identical (H, W, C).
class VideoSequence {
 public:
  VideoSequence() = default;
  explicit VideoSequence(std::vector<Image> frames);

  [[nodiscard]] int frame_count() const noexcept { return static_cast<int>(frames_.size()); }
  [[nodiscard]] const Image& frame(int f) const { return frames_.at(static_cast<std::size_t>(f)); }
  [[nodiscard]] const std::vector<Image>& frames() const noexcept { return frames_; }

 private:
  std::vector<Image> frames_;
};

/// Top-left corner of a patch in a frame.
struct PatchRef {
  int frame = 0;
  int row = 0;
  int col = 0;

  friend auto operator<=>(const PatchRef&, const PatchRef&) = default;
};

/// K stacked RGGB patches (ps x ps x 4 each); members[0] is the reference.
struct RggbGroup {
  std::vector<Tensor3> patches;
  std::vector<PatchRef> members;

  [[nodiscard]] Index size() const noexcept { return static_cast<Index>(patches.size()); }
  [[nodiscard]] Index patch_size() const noexcept {
    return patches.empty() ? 0 : patches.front().rows();
  }
  [[nodiscard]] double squared_norm() const;
};

/// Copies the ps x ps x C block whose top-left corner is (ref.row, ref.col).
/// Throws BoundsError when the block leaves the image.
Tensor3 extract_patch(const Image& img, const PatchRef& ref, int ps);

/// ps x ps x 3 -> ps x ps x 4 with channel order [R, G, G, B].
Tensor3 rgb_to_rggb(const Tensor3& rgb);

/// Inverse reformulation; the two green copies are averaged.
Tensor3 rggb_to_rgb(const Tensor3& rggb);

/// Group of reformulated patches at the given positions of one image.
RggbGroup build_group(const Image& img, std::span<const PatchRef> members, int ps);

/// Same, with members addressing frames of a sequence.
RggbGroup build_group(const VideoSequence& video, std::span<const PatchRef> members,
                      int ps);

/// Adds i.i.d. N(0, sigma^2) noise to every sample; no clamping.
Image add_awgn(const Image& img, double sigma, std::uint64_t seed);

/// Per-channel noise levels (R, G, B) for 3-channel images.
Image add_awgn(const Image& img, const std::array<double, 3>& sigma_rgb,
               std::uint64_t seed);

/// 8-bit raster in the same planar layout as Image.
struct Raster8 {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;

  friend bool operator==(const Raster8&, const Raster8&) = default;
};

/// Round half up, then clamp to [0, 255].
Raster8 quantize(const Image& img);

/// Promotes an 8-bit raster back to floating point.
Image to_image(const Raster8& raster);

}  // namespace gcpid
