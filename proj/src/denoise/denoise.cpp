#include "gcpid/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gcpid/error.hpp"
#include "gcpid/search.hpp"
#include "../common/parallel.hpp"

namespace gcpid {

namespace {

// References handled per parallel batch; bounds the memory held by
// not-yet-aggregated group estimates.
constexpr std::size_t kBatch = 512;

struct GroupResult {
  std::vector<PatchRef> members;
  std::vector<Tensor3> patches;  // RGB, ps x ps x 3
  std::size_t retained = 0;
  std::size_t total = 0;
};

RggbGroup filter_group(const RggbGroup& g, double tau, std::size_t* retained,
                       std::size_t* total) {
  const talg::TransformSet t = talg::learn_transform(g);
  talg::CoeffGroup c = hard_threshold(talg::forward_transform(g, t), tau);
  if (retained) *retained = c.retained_count;
  if (total) *total = c.total_count();
  return talg::inverse_transform(c, t);
}

GroupResult filter_reference(std::span<const search::SearchIndex> indexes,
                             const VideoSequence& frames, const PatchRef& ref,
                             const DenoiseConfig& cfg, double tau) {
  const auto found =
      search::find_similar_video(indexes, ref, cfg, search::SearchScheme::GreenGuided);
  GroupResult r;
  r.members.reserve(found.size());
  for (const auto& c : found) r.members.push_back(c.ref);
  const RggbGroup noisy = build_group(frames, r.members, cfg.patch_size);
  const RggbGroup clean = filter_group(noisy, tau, &r.retained, &r.total);
  r.patches.reserve(clean.patches.size());
  for (const auto& p : clean.patches) r.patches.push_back(rggb_to_rgb(p));
  return r;
}

// Groups are filtered in parallel batches; aggregation runs on the calling
// thread in reference order, so the output does not depend on `workers`.
std::vector<Image> run_pipeline(const VideoSequence& frames, const DenoiseConfig& cfg,
                                double tau, DenoiseStats* stats) {
  const Image& first = frames.frame(0);
  if (first.channels() != 3) throw ShapeError("denoise: expected 3-channel input");
  const int ps = cfg.patch_size;
  if (first.height() < ps || first.width() < ps) {
    throw SizeError("denoise: " + std::to_string(first.height()) + "x" +
                    std::to_string(first.width()) + " input is smaller than patch size " +
                    std::to_string(ps));
  }

  std::vector<search::SearchIndex> indexes;
  indexes.reserve(static_cast<std::size_t>(frames.frame_count()));
  for (const auto& f : frames.frames()) indexes.emplace_back(f);

  std::vector<PatchRef> refs;
  for (int f = 0; f < frames.frame_count(); ++f) {
    const auto grid = search::reference_grid(first.height(), first.width(), ps, cfg.stride, f);
    refs.insert(refs.end(), grid.begin(), grid.end());
  }

  AggregationBuffer buffer(frames.frame_count(), first.height(), first.width());
  const unsigned workers = detail::resolve_workers(cfg.workers);
  DenoiseStats local;
  std::vector<GroupResult> results;
  for (std::size_t begin = 0; begin < refs.size(); begin += kBatch) {
    const std::size_t n = std::min(kBatch, refs.size() - begin);
    results.assign(n, GroupResult{});
    detail::parallel_for(n, workers, [&](std::size_t i) {
      results[i] = filter_reference(indexes, frames, refs[begin + i], cfg, tau);
    });
    for (const auto& r : results) {
      for (std::size_t m = 0; m < r.members.size(); ++m) buffer.accumulate(r.members[m], r.patches[m]);
      local.retained_coefficients += r.retained;
      local.total_coefficients += r.total;
      ++local.groups;
    }
  }
  local.min_weight = buffer.min_weight();
  if (stats) *stats = local;

  std::vector<Image> out;
  out.reserve(static_cast<std::size_t>(frames.frame_count()));
  for (int f = 0; f < frames.frame_count(); ++f) out.push_back(buffer.resolve(f));
  return out;
}

}  // namespace

double threshold_value(const DenoiseConfig& cfg) {
  cfg.validate();
  const double ps = cfg.patch_size;
  double count = 3.0 * ps * ps * static_cast<double>(cfg.group_size);
  if (cfg.video) count *= static_cast<double>(cfg.frames);
  return cfg.tau_scale * cfg.sigma * std::sqrt(2.0 * std::log(count));
}

talg::CoeffGroup hard_threshold(talg::CoeffGroup c, double tau) {
  if (!(tau >= 0.0)) throw ConfigError("hard_threshold: tau must be >= 0");
  std::size_t kept = 0;
  for (auto& t : c.coeffs) {
    for (Index k = 0; k < t.depth(); ++k) {
      auto& s = t.slice(k);
      for (Index i = 0; i < s.size(); ++i) {
        double& v = s.data()[i];
        if (std::abs(v) < tau) {
          v = 0.0;
        } else {
          ++kept;
        }
      }
    }
  }
  c.retained_count = kept;
  return c;
}

RggbGroup denoise_group(const RggbGroup& g, double tau) {
  return filter_group(g, tau, nullptr, nullptr);
}

AggregationBuffer::AggregationBuffer(int frames, int height, int width, int channels)
    : height_(height), width_(width), channels_(channels) {
  if (frames < 1) throw ShapeError("AggregationBuffer: needs at least one frame");
  numerator_.assign(static_cast<std::size_t>(frames), Image(height, width, channels));
  weight_.assign(static_cast<std::size_t>(frames),
                 std::vector<double>(static_cast<std::size_t>(height) *
                                         static_cast<std::size_t>(width),
                                     0.0));
}

void AggregationBuffer::accumulate(const PatchRef& at, const Tensor3& patch) {
  if (at.frame < 0 || at.frame >= static_cast<int>(numerator_.size())) {
    throw BoundsError("AggregationBuffer: frame index out of range");
  }
  const int rows = static_cast<int>(patch.rows());
  const int cols = static_cast<int>(patch.cols());
  if (patch.depth() != channels_) throw ShapeError("AggregationBuffer: channel mismatch");
  if (at.row < 0 || at.col < 0 || at.row + rows > height_ || at.col + cols > width_) {
    throw BoundsError("AggregationBuffer: patch outside the image");
  }
  Image& num = numerator_[static_cast<std::size_t>(at.frame)];
  auto& w = weight_[static_cast<std::size_t>(at.frame)];
  for (int c = 0; c < channels_; ++c) {
    const auto& s = patch.slice(c);
    for (int y = 0; y < rows; ++y) {
      for (int x = 0; x < cols; ++x) num.at(c, at.row + y, at.col + x) += s(y, x);
    }
  }
  for (int y = 0; y < rows; ++y) {
    double* row = w.data() + static_cast<std::size_t>(at.row + y) * width_ + at.col;
    for (int x = 0; x < cols; ++x) row[x] += 1.0;
  }
}

double AggregationBuffer::min_weight() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& w : weight_) m = std::min(m, *std::min_element(w.begin(), w.end()));
  return m;
}

double AggregationBuffer::weight(int frame, int y, int x) const {
  return weight_.at(static_cast<std::size_t>(frame))
      .at(static_cast<std::size_t>(y) * width_ + x);
}

Image AggregationBuffer::resolve(int frame) const {
  const Image& num = numerator_.at(static_cast<std::size_t>(frame));
  const auto& w = weight_[static_cast<std::size_t>(frame)];
  Image out(height_, width_, channels_);
  for (int c = 0; c < channels_; ++c) {
    auto src = num.plane(c);
    auto dst = out.plane(c);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!(w[i] > 0.0)) throw Error("AggregationBuffer: pixel without any contribution");
      dst[i] = src[i] / w[i];
    }
  }
  return out;
}

Image denoise_image(const Image& noisy, const DenoiseConfig& cfg, DenoiseStats* stats) {
  DenoiseConfig c = cfg;
  c.video = false;
  c.frames = 1;
  c.validate();
  const double tau = threshold_value(c);
  auto out = run_pipeline(VideoSequence({noisy}), c, tau, stats);
  return std::move(out.front());
}

VideoSequence denoise_video(const VideoSequence& noisy, const DenoiseConfig& cfg,
                            DenoiseStats* stats) {
  if (noisy.frame_count() < 1) throw ShapeError("denoise_video: empty sequence");
  DenoiseConfig c = cfg;
  c.video = true;
  c.frames = noisy.frame_count();
  c.validate();
  const double tau = threshold_value(c);
  return VideoSequence(run_pipeline(noisy, c, tau, stats));
}

}  // namespace gcpid
