#include "gcpid/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gcpid/error.hpp"

namespace gcpid::search {

namespace {

struct Window {
  int row_lo, row_hi, col_lo, col_hi;
};

Window clip_window(int height, int width, const PatchRef& ref, int ps, int window) {
  const int half = window / 2;
  Window w{};
  w.row_lo = std::max(0, ref.row - half);
  w.row_hi = std::min(height - ps, ref.row - half + window - 1);
  w.col_lo = std::max(0, ref.col - half);
  w.col_hi = std::min(width - ps, ref.col - half + window - 1);
  return w;
}

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.ref < b.ref;  // (frame, row, col)
}

double plane_ssd(std::span<const double> pa, std::span<const double> pb, int width, int ps,
                 const PatchRef& a, const PatchRef& b) {
  double acc = 0.0;
  for (int y = 0; y < ps; ++y) {
    const double* ra = pa.data() + static_cast<std::size_t>(a.row + y) * width + a.col;
    const double* rb = pb.data() + static_cast<std::size_t>(b.row + y) * width + b.col;
    for (int x = 0; x < ps; ++x) {
      const double d = ra[x] - rb[x];
      acc += d * d;
    }
  }
  return acc;
}

double plane_energy(std::span<const double> p, int width, int ps, const PatchRef& a) {
  double acc = 0.0;
  for (int y = 0; y < ps; ++y) {
    const double* r = p.data() + static_cast<std::size_t>(a.row + y) * width + a.col;
    for (int x = 0; x < ps; ++x) acc += r[x] * r[x];
  }
  return acc;
}

enum class Planes { Green, Mean, Rgb };

Planes planes_for(const SearchIndex& index, const PatchRef& ref, int ps, SearchScheme scheme,
                  double lambda) {
  switch (scheme) {
    case SearchScheme::GreenOnly:
      return Planes::Green;
    case SearchScheme::OpponentMean:
      return Planes::Mean;
    case SearchScheme::FullRGB:
      return Planes::Rgb;
    case SearchScheme::GreenGuided:
      break;
  }
  const Image& img = index.image();
  const double r = std::sqrt(plane_energy(img.plane(0), img.width(), ps, ref));
  const double g = std::sqrt(plane_energy(img.plane(1), img.width(), ps, ref));
  const double b = std::sqrt(plane_energy(img.plane(2), img.width(), ps, ref));
  return g >= lambda * std::max(r, b) ? Planes::Green : Planes::Mean;
}

double squared_distance(const SearchIndex& ia, const SearchIndex& ib, const PatchRef& a,
                        const PatchRef& b, int ps, Planes planes) {
  const int width = ia.image().width();
  switch (planes) {
    case Planes::Green:
      return plane_ssd(ia.image().plane(1), ib.image().plane(1), width, ps, a, b);
    case Planes::Mean:
      return plane_ssd(ia.mean_plane(), ib.mean_plane(), width, ps, a, b);
    case Planes::Rgb:
      break;
  }
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    acc += plane_ssd(ia.image().plane(c), ib.image().plane(c), width, ps, a, b);
  }
  return acc;
}

void check_ref(const Image& img, const PatchRef& ref, const DenoiseConfig& cfg) {
  cfg.validate();
  if (img.channels() != 3) throw ShapeError("find_similar: expected a 3-channel image");
  if (ref.row < 0 || ref.col < 0 || ref.row + cfg.patch_size > img.height() ||
      ref.col + cfg.patch_size > img.width()) {
    throw BoundsError("find_similar: reference (" + std::to_string(ref.row) + ", " +
                      std::to_string(ref.col) + ") outside the image");
  }
}

std::vector<Candidate> select(std::vector<Candidate> pool, const PatchRef& ref, int k) {
  const std::size_t keep = std::min(pool.size(), static_cast<std::size_t>(k - 1));
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end(),
                    candidate_less);
  std::vector<Candidate> out;
  out.reserve(keep + 1);
  out.push_back({ref, 0.0});
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({pool[i].ref, std::sqrt(pool[i].distance)});
  }
  return out;
}

std::vector<Candidate> search_frames(std::span<const SearchIndex* const> frames,
                                     const PatchRef& ref, const DenoiseConfig& cfg,
                                     SearchScheme scheme) {
  if (frames.empty()) throw ShapeError("find_similar_video: no frames");
  if (ref.frame < 0 || ref.frame >= static_cast<int>(frames.size())) {
    throw BoundsError("find_similar_video: frame index " + std::to_string(ref.frame) +
                      " out of range");
  }
  const SearchIndex& home = *frames[static_cast<std::size_t>(ref.frame)];
  check_ref(home.image(), ref, cfg);

  const int ps = cfg.patch_size;
  const Image& img = home.image();
  const Window w = clip_window(img.height(), img.width(), ref, ps, cfg.window);
  const Planes planes = planes_for(home, ref, ps, scheme, cfg.lambda);

  std::vector<Candidate> pool;
  pool.reserve(frames.size() * static_cast<std::size_t>(w.row_hi - w.row_lo + 1) *
               static_cast<std::size_t>(w.col_hi - w.col_lo + 1));
  for (int f = 0; f < static_cast<int>(frames.size()); ++f) {
    const SearchIndex& other = *frames[static_cast<std::size_t>(f)];
    if (!other.image().same_shape(img)) throw ShapeError("find_similar_video: frames differ in shape");
    for (int r = w.row_lo; r <= w.row_hi; ++r) {
      for (int c = w.col_lo; c <= w.col_hi; ++c) {
        const PatchRef cand{f, r, c};
        if (cand == ref) continue;
        pool.push_back({cand, squared_distance(home, other, ref, cand, ps, planes)});
      }
    }
  }
  return select(std::move(pool), ref, cfg.group_size);
}

}  // namespace

std::string_view to_string(SearchScheme s) {
  switch (s) {
    case SearchScheme::GreenGuided:
      return "green-guided";
    case SearchScheme::GreenOnly:
      return "green-only";
    case SearchScheme::OpponentMean:
      return "opponent-mean";
    case SearchScheme::FullRGB:
      return "full-rgb";
  }
  return "unknown";
}

SearchScheme scheme_from_string(std::string_view name) {
  for (auto s : {SearchScheme::GreenGuided, SearchScheme::GreenOnly,
                 SearchScheme::OpponentMean, SearchScheme::FullRGB}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown search scheme '" + std::string(name) + "'");
}

std::vector<PatchRef> reference_grid(int height, int width, int ps, int stride, int frame) {
  if (ps < 1 || stride < 1) throw ConfigError("reference_grid: ps and stride must be >= 1");
  if (height < ps || width < ps) {
    throw SizeError("reference_grid: " + std::to_string(height) + "x" +
                    std::to_string(width) + " image is smaller than patch size " +
                    std::to_string(ps));
  }
  auto axis = [&](int extent) {
    std::vector<int> pos;
    for (int p = 0; p <= extent - ps; p += stride) pos.push_back(p);
    if (pos.back() != extent - ps) pos.push_back(extent - ps);
    return pos;
  };
  const auto rows = axis(height);
  const auto cols = axis(width);
  std::vector<PatchRef> grid;
  grid.reserve(rows.size() * cols.size());
  for (int r : rows) {
    for (int c : cols) grid.push_back({frame, r, c});
  }
  return grid;
}

bool channel_dominance(const Tensor3& patch, double lambda) {
  if (patch.depth() != 3) throw ShapeError("channel_dominance: expected 3 channels");
  const double r = patch.slice(0).norm();
  const double g = patch.slice(1).norm();
  const double b = patch.slice(2).norm();
  return g >= lambda * std::max(r, b);
}

double patch_distance(const Tensor3& a, const Tensor3& b, SearchScheme scheme, double lambda) {
  if (!a.same_shape(b) || a.depth() != 3) {
    throw ShapeError("patch_distance: expected two patches of equal shape with 3 channels");
  }
  auto mean = [](const Tensor3& p) -> Eigen::MatrixXd {
    return (p.slice(0) + p.slice(1) + p.slice(2)) / 3.0;
  };
  switch (scheme) {
    case SearchScheme::GreenOnly:
      return (a.slice(1) - b.slice(1)).norm();
    case SearchScheme::OpponentMean:
      return (mean(a) - mean(b)).norm();
    case SearchScheme::FullRGB:
      return (a - b).norm();
    case SearchScheme::GreenGuided:
      break;
  }
  return channel_dominance(a, lambda) ? (a.slice(1) - b.slice(1)).norm()
                                      : (mean(a) - mean(b)).norm();
}

SearchIndex::SearchIndex(const Image& img) : img_(&img) {
  if (img.channels() != 3) throw ShapeError("SearchIndex: expected a 3-channel image");
  const auto r = img.plane(0);
  const auto g = img.plane(1);
  const auto b = img.plane(2);
  mean_.resize(img.plane_size());
  for (std::size_t i = 0; i < mean_.size(); ++i) mean_[i] = (r[i] + g[i] + b[i]) / 3.0;
}

std::vector<Candidate> find_similar(const Image& img, const PatchRef& ref,
                                    const DenoiseConfig& cfg, SearchScheme scheme) {
  check_ref(img, ref, cfg);
  return find_similar(SearchIndex(img), ref, cfg, scheme);
}

std::vector<Candidate> find_similar(const SearchIndex& index, const PatchRef& ref,
                                    const DenoiseConfig& cfg, SearchScheme scheme) {
  const SearchIndex* frames[] = {&index};
  PatchRef single = ref;
  single.frame = 0;
  auto out = search_frames(frames, single, cfg, scheme);
  for (auto& c : out) c.ref.frame = ref.frame;
  return out;
}

std::vector<Candidate> find_similar_video(const VideoSequence& video, const PatchRef& ref,
                                          const DenoiseConfig& cfg, SearchScheme scheme) {
  std::vector<SearchIndex> frames;
  frames.reserve(static_cast<std::size_t>(video.frame_count()));
  for (const auto& f : video.frames()) frames.emplace_back(f);
  return find_similar_video(std::span<const SearchIndex>(frames), ref, cfg, scheme);
}

std::vector<Candidate> find_similar_video(std::span<const SearchIndex> frames,
                                          const PatchRef& ref, const DenoiseConfig& cfg,
                                          SearchScheme scheme) {
  std::vector<const SearchIndex*> ptrs;
  ptrs.reserve(frames.size());
  for (const auto& f : frames) ptrs.push_back(&f);
  return search_frames(ptrs, ref, cfg, scheme);
}

int window_candidate_count(int height, int width, const PatchRef& ref, int ps, int window) {
  const Window w = clip_window(height, width, ref, ps, window);
  return (w.row_hi - w.row_lo + 1) * (w.col_hi - w.col_lo + 1);
}

std::vector<PatchRef> sample_references(int height, int width, int ps, int n,
                                        std::uint64_t seed) {
  if (height < ps || width < ps) throw SizeError("sample_references: image smaller than ps");
  std::mt19937_64 rng(seed);
  const auto rows = static_cast<std::uint64_t>(height - ps + 1);
  const auto cols = static_cast<std::uint64_t>(width - ps + 1);
  std::vector<PatchRef> refs;
  refs.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    const auto r = static_cast<int>(rng() % rows);
    const auto c = static_cast<int>(rng() % cols);
    refs.push_back({0, r, c});
  }
  return refs;
}

double search_overlap(const Image& clean, const Image& noisy, std::span<const PatchRef> refs,
                      const DenoiseConfig& cfg, SearchScheme scheme) {
  if (!clean.same_shape(noisy)) throw ShapeError("search_overlap: images differ in shape");
  if (refs.empty()) throw ConfigError("search_overlap: needs at least one reference");
  const SearchIndex clean_index(clean);
  const SearchIndex noisy_index(noisy);
  double total = 0.0;
  for (const auto& ref : refs) {
    check_ref(clean, ref, cfg);
    auto truth = find_similar(clean_index, ref, cfg, SearchScheme::FullRGB);
    auto found = find_similar(noisy_index, ref, cfg, scheme);
    std::vector<PatchRef> a;
    std::vector<PatchRef> b;
    for (const auto& c : truth) a.push_back(c.ref);
    for (const auto& c : found) b.push_back(c.ref);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<PatchRef> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    total += static_cast<double>(common.size()) / static_cast<double>(a.size());
  }
  return total / static_cast<double>(refs.size());
}

double success_rate(const Image& clean, const Image& noisy, const DenoiseConfig& cfg,
                    SearchScheme scheme, int n_refs, std::uint64_t seed) {
  if (n_refs < 1) throw ConfigError("success_rate: n_refs must be >= 1");
  const auto refs =
      sample_references(clean.height(), clean.width(), cfg.patch_size, n_refs, seed);
  return search_overlap(clean, noisy, refs, cfg, scheme);
}

}  // namespace gcpid::search
