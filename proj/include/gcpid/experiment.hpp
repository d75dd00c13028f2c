#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcpid/config.hpp"
#include "gcpid/metrics.hpp"
#include "gcpid/search.hpp"

namespace gcpid::harness {

enum class Mode { Denoise, SynthDenoise, SearchRate, Metrics };

std::string_view to_string(Mode m);
/// Accepts "denoise", "synth-denoise", "search-rate", "metrics".
Mode mode_from_string(std::string_view name);

struct ExperimentSpec {
  Mode mode = Mode::SynthDenoise;
  /// Image files, or frame directories when config.video is set. In metrics
  /// mode the first input is the reference and the rest are compared to it.
  std::vector<std::filesystem::path> inputs;
  std::vector<double> sigmas;
  /// Per-channel noise (R, G, B); replaces `sigmas` for noise synthesis.
  std::optional<std::array<double, 3>> sigma_rgb;
  std::uint64_t seed = 0;
  DenoiseConfig config;
  std::filesystem::path output_dir;
  std::filesystem::path report_path;
  bool quantize_metrics = false;

  int synthetic_count = 0;  ///< generated images appended to the inputs
  int synthetic_size = 256;
  int synthetic_frames = 5;  ///< frames of a static synthetic video

  int search_refs = 1000;
  int search_trials = 1;  ///< noise/reference draws averaged per row
  std::vector<search::SearchScheme> schemes = {
      search::SearchScheme::GreenGuided, search::SearchScheme::GreenOnly,
      search::SearchScheme::OpponentMean, search::SearchScheme::FullRGB};

  /// Throws ConfigError when a field the mode needs is missing or invalid.
  void validate() const;
};

struct ReportRow {
  std::string image_id;
  std::string sigma;  ///< "25" or "30/15/30" for per-channel noise
  std::string config;
  double psnr_noisy = 0.0;
  double psnr_denoised = 0.0;
  double ssim_noisy = 0.0;
  double ssim_denoised = 0.0;
  double wall_seconds = 0.0;
  std::string status = "ok";  ///< "ok" or "error: <message>"
};

struct SearchRateRow {
  std::string image_id;  ///< "mean" for the per-scheme average rows
  std::string sigma;
  std::string scheme;
  int group_size = 0;
  int window = 0;
  int refs = 0;
  double rate = 0.0;
  std::string status = "ok";
};

/// "ps=8;W=20;K=30;lambda=0.8;tau_scale=1.1;stride=4"
std::string config_summary(const DenoiseConfig& cfg);

/// Seeds each noise realization from (seed, image id, sigma index, trial) so
/// rows do not depend on batch order or worker count.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view id, std::size_t sigma_index,
                          std::size_t trial = 0);

/// Adds seeded noise to every input (and the synthetic corpus), denoises it
/// and scores both against the clean image. Rows are sorted by (id, sigma);
/// the CSV is written to report_path when set.
std::vector<ReportRow> run_synth_denoise(const ExperimentSpec& spec);

/// Denoises already-noisy inputs with the first sigma, writing results into
/// output_dir. Metric columns are NaN since no reference exists.
std::vector<ReportRow> run_denoise(const ExperimentSpec& spec);

/// Search success rate of every scheme on every image and noise level,
/// followed by one "mean" row per (sigma, scheme).
std::vector<SearchRateRow> run_search_rate(const ExperimentSpec& spec);

/// Scores inputs[1..] against inputs[0].
std::vector<metrics::MetricsReport> run_metrics(const ExperimentSpec& spec);

void write_report_csv(const std::vector<ReportRow>& rows, const std::filesystem::path& path);
void write_search_rate_csv(const std::vector<SearchRateRow>& rows,
                           const std::filesystem::path& path);
void write_metrics_csv(const std::vector<metrics::MetricsReport>& rows,
                       const std::filesystem::path& path);

std::string report_csv(const std::vector<ReportRow>& rows);
std::string search_rate_csv(const std::vector<SearchRateRow>& rows);
std::string metrics_csv(const std::vector<metrics::MetricsReport>& rows);

}  // namespace gcpid::harness
