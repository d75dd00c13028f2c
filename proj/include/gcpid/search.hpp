#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gcpid/config.hpp"
#include "gcpid/image.hpp"
#include "gcpid/tensor.hpp"

namespace gcpid::search {

enum class SearchScheme {
  GreenGuided,   ///< green plane if the reference is green dominant, else RGB mean
  GreenOnly,     ///< green plane only
  OpponentMean,  ///< per-pixel RGB mean (luminance axis of the opponent space)
  FullRGB,       ///< all three planes
};

std::string_view to_string(SearchScheme s);
/// Accepts the names printed by to_string; throws ConfigError otherwise.
SearchScheme scheme_from_string(std::string_view name);

struct Candidate {
  PatchRef ref;
  double distance = 0.0;  ///< Frobenius distance under the scheme
};

/// Top-left positions at multiples of stride, plus H-ps / W-ps when off-grid,
/// in row-major order. Throws SizeError when the image is smaller than ps.
std::vector<PatchRef> reference_grid(int height, int width, int ps, int stride,
                                     int frame = 0);

/// ||G|| >= lambda * max(||R||, ||B||) on a ps x ps x 3 patch.
bool channel_dominance(const Tensor3& patch, double lambda);

/// Frobenius distance between two ps x ps x 3 patches under a scheme. For
/// GreenGuided the branch is chosen by the dominance of `a` (the reference).
double patch_distance(const Tensor3& a, const Tensor3& b, SearchScheme scheme, double lambda);

/// Planes a search reads, precomputed once per image. Keeps a pointer to
/// the image, which must outlive the index.
class SearchIndex {
 public:
  explicit SearchIndex(const Image& img);

  [[nodiscard]] const Image& image() const noexcept { return *img_; }
  [[nodiscard]] std::span<const double> mean_plane() const noexcept { return mean_; }

 private:
  const Image* img_;
  std::vector<double> mean_;
};

/// Up to K most similar patches to `ref` among top-left positions inside the
/// W x W box centered on ref (clipped to the image). Member 0 is ref; the
/// rest are ordered by (distance, row, col).
std::vector<Candidate> find_similar(const Image& img, const PatchRef& ref,
                                    const DenoiseConfig& cfg,
                                    SearchScheme scheme = SearchScheme::GreenGuided);

std::vector<Candidate> find_similar(const SearchIndex& index, const PatchRef& ref,
                                    const DenoiseConfig& cfg,
                                    SearchScheme scheme = SearchScheme::GreenGuided);

/// Same window in every frame; ties ordered by (distance, frame, row, col).
std::vector<Candidate> find_similar_video(const VideoSequence& video, const PatchRef& ref,
                                          const DenoiseConfig& cfg,
                                          SearchScheme scheme = SearchScheme::GreenGuided);

/// frames[f] indexes frame f of the sequence.
std::vector<Candidate> find_similar_video(std::span<const SearchIndex> frames,
                                          const PatchRef& ref, const DenoiseConfig& cfg,
                                          SearchScheme scheme = SearchScheme::GreenGuided);

/// Number of top-left positions in the clipped search window of ref.
int window_candidate_count(int height, int width, const PatchRef& ref, int ps, int window);

/// n uniformly drawn valid top-left positions, reproducible from seed.
std::vector<PatchRef> sample_references(int height, int width, int ps, int n,
                                        std::uint64_t seed);

/// Mean over refs of |scheme set on noisy ∩ FullRGB set on clean| / |clean set|.
double search_overlap(const Image& clean, const Image& noisy, std::span<const PatchRef> refs,
                      const DenoiseConfig& cfg, SearchScheme scheme);

/// search_overlap over n_refs references drawn with sample_references.
double success_rate(const Image& clean, const Image& noisy, const DenoiseConfig& cfg,
                    SearchScheme scheme, int n_refs, std::uint64_t seed);

}  // namespace gcpid::search
