#include "gcpid/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcpid/error.hpp"

namespace gcpid {

// ---------------------------------------------------------------------------
// Tensor3

Tensor3::Tensor3(Index rows, Index cols, Index depth)
    : rows_(rows), cols_(cols),
      slices_(static_cast<std::size_t>(depth), Eigen::MatrixXd::Zero(rows, cols)) {}

Tensor3 Tensor3::from_slices(std::vector<Eigen::MatrixXd> slices) {
  Tensor3 t;
  if (!slices.empty()) {
    t.rows_ = slices.front().rows();
    t.cols_ = slices.front().cols();
    for (const auto& s : slices) {
      if (s.rows() != t.rows_ || s.cols() != t.cols_) {
        throw ShapeError("Tensor3::from_slices: frontal slices differ in shape");
      }
    }
  }
  t.slices_ = std::move(slices);
  return t;
}

double Tensor3::squared_norm() const {
  double acc = 0.0;
  for (const auto& s : slices_) acc += s.squaredNorm();
  return acc;
}

double Tensor3::norm() const { return std::sqrt(squared_norm()); }

double Tensor3::max_abs() const {
  double m = 0.0;
  for (const auto& s : slices_) {
    if (s.size() > 0) m = std::max(m, s.cwiseAbs().maxCoeff());
  }
  return m;
}

bool Tensor3::all_finite() const {
  return std::all_of(slices_.begin(), slices_.end(),
                     [](const Eigen::MatrixXd& s) { return s.allFinite(); });
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
  if (!same_shape(other)) throw ShapeError("Tensor3 +=: shape mismatch");
  for (std::size_t k = 0; k < slices_.size(); ++k) slices_[k] += other.slices_[k];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
  if (!same_shape(other)) throw ShapeError("Tensor3 -=: shape mismatch");
  for (std::size_t k = 0; k < slices_.size(); ++k) slices_[k] -= other.slices_[k];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (auto& m : slices_) m *= s;
  return *this;
}

bool operator==(const Tensor3& a, const Tensor3& b) {
  if (!a.same_shape(b)) return false;
  for (std::size_t k = 0; k < a.slices_.size(); ++k) {
    if (a.slices_[k] != b.slices_[k]) return false;
  }
  return true;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

double max_abs_diff(const Tensor3& a, const Tensor3& b) {
  return (a - b).max_abs();
}

// ---------------------------------------------------------------------------
// Image

namespace {

void check_dims(int height, int width, int channels) {
  if (height < 0 || width < 0) throw ShapeError("Image: negative dimensions");
  if (channels != 1 && channels != 3 && channels != 4) {
    throw ShapeError("Image: channel count must be 1, 3 or 4, got " +
                     std::to_string(channels));
  }
}

}  // namespace

Image::Image(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
  check_dims(height, width, channels);
  data_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
                   static_cast<std::size_t>(channels),
               fill);
}

Image::Image(int height, int width, int channels, std::vector<double> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  check_dims(height, width, channels);
  if (data_.size() != plane_size() * static_cast<std::size_t>(channels)) {
    throw ShapeError("Image: data length does not match H x W x C");
  }
}

std::span<double> Image::plane(int c) {
  return std::span<double>(data_).subspan(static_cast<std::size_t>(c) * plane_size(),
                                          plane_size());
}

std::span<const double> Image::plane(int c) const {
  return std::span<const double>(data_).subspan(
      static_cast<std::size_t>(c) * plane_size(), plane_size());
}

bool Image::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

VideoSequence::VideoSequence(std::vector<Image> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) throw ShapeError("VideoSequence: needs at least one frame");
  for (const auto& f : frames_) {
    if (!f.same_shape(frames_.front())) {
      throw ShapeError("VideoSequence: frames differ in shape");
    }
  }
}

double RggbGroup::squared_norm() const {
  double acc = 0.0;
  for (const auto& p : patches) acc += p.squared_norm();
  return acc;
}

// ---------------------------------------------------------------------------
// Patches

Tensor3 extract_patch(const Image& img, const PatchRef& ref, int ps) {
  if (ps < 1) throw ShapeError("extract_patch: patch size must be positive");
  if (ref.row < 0 || ref.col < 0 || ref.row + ps > img.height() ||
      ref.col + ps > img.width()) {
    throw BoundsError("extract_patch: patch at (" + std::to_string(ref.row) + ", " +
                      std::to_string(ref.col) + ") of side " + std::to_string(ps) +
                      " exceeds " + std::to_string(img.height()) + "x" +
                      std::to_string(img.width()) + " image");
  }
  Tensor3 out(ps, ps, img.channels());
  for (int c = 0; c < img.channels(); ++c) {
    auto& s = out.slice(c);
    for (int y = 0; y < ps; ++y) {
      for (int x = 0; x < ps; ++x) s(y, x) = img.at(c, ref.row + y, ref.col + x);
    }
  }
  return out;
}

Tensor3 rgb_to_rggb(const Tensor3& rgb) {
  if (rgb.depth() != 3) throw ShapeError("rgb_to_rggb: expected 3 channels");
  return Tensor3::from_slices({rgb.slice(0), rgb.slice(1), rgb.slice(1), rgb.slice(2)});
}

Tensor3 rggb_to_rgb(const Tensor3& rggb) {
  if (rggb.depth() != 4) throw ShapeError("rggb_to_rgb: expected 4 channels");
  Eigen::MatrixXd green = 0.5 * (rggb.slice(1) + rggb.slice(2));
  return Tensor3::from_slices({rggb.slice(0), std::move(green), rggb.slice(3)});
}

RggbGroup build_group(const Image& img, std::span<const PatchRef> members, int ps) {
  if (img.channels() != 3) throw ShapeError("build_group: expected a 3-channel image");
  RggbGroup g;
  g.members.assign(members.begin(), members.end());
  g.patches.reserve(members.size());
  for (const auto& m : members) g.patches.push_back(rgb_to_rggb(extract_patch(img, m, ps)));
  return g;
}

RggbGroup build_group(const VideoSequence& video, std::span<const PatchRef> members,
                      int ps) {
  RggbGroup g;
  g.members.assign(members.begin(), members.end());
  g.patches.reserve(members.size());
  for (const auto& m : members) {
    if (m.frame < 0 || m.frame >= video.frame_count()) {
      throw BoundsError("build_group: frame index " + std::to_string(m.frame) +
                        " out of range");
    }
    const Image& f = video.frame(m.frame);
    if (f.channels() != 3) throw ShapeError("build_group: expected 3-channel frames");
    g.patches.push_back(rgb_to_rggb(extract_patch(f, m, ps)));
  }
  return g;
}

}  // namespace gcpid
