#include "gcpid/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "gcpid/error.hpp"
#include "gcpid/experiment.hpp"

namespace gcpid {

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

template <typename Row>
int count_failures(const std::vector<Row>& rows) {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.status != "ok"; }));
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Color image and video denoising with green-guided patch grouping and "
               "a nonlocal tensor transform.",
               "gcpid"};
  app.set_version_flag("--version", "gcpid 0.1.0");

  harness::ExperimentSpec spec;
  std::string mode = "synth-denoise";
  std::vector<std::string> inputs;
  std::vector<double> sigma_rgb;
  std::vector<std::string> schemes;
  std::string output;
  std::string report;
  DenoiseConfig& cfg = spec.config;

  app.add_option("--mode", mode, "denoise | synth-denoise | search-rate | metrics")
      ->check(CLI::IsMember({"denoise", "synth-denoise", "search-rate", "metrics"}))
      ->capture_default_str();
  app.add_option("--input", inputs,
                 "Image files, or frame directories with --video. In metrics mode the first "
                 "is the reference");
  app.add_option("--output", output, "Output directory for denoised results");
  app.add_option("--sigma", spec.sigmas, "Noise level(s) on the [0, 255] scale")
      ->delimiter(',');
  app.add_option("--sigma-rgb", sigma_rgb, "Per-channel noise levels R,G,B")
      ->delimiter(',')
      ->expected(3);
  app.add_option("--seed", spec.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--ps", cfg.patch_size, "Patch size")->capture_default_str();
  auto* window = app.add_option("--window", cfg.window, "Search window side (16 with --video)")
                     ->capture_default_str();
  auto* k = app.add_option("--k", cfg.group_size, "Patches per group (60 in search-rate)")
                ->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "Green dominance threshold")->capture_default_str();
  app.add_option("--tau-scale", cfg.tau_scale, "Threshold multiplier")->capture_default_str();
  app.add_option("--stride", cfg.stride, "Reference grid step")->capture_default_str();
  app.add_flag("--video", cfg.video, "Treat inputs as frame directories");
  app.add_option("--report", report, "CSV report path (stdout when omitted)");
  app.add_flag("--quantize-metrics", spec.quantize_metrics,
               "Round images to 8 bits before measuring");
  app.add_option("--workers", cfg.workers, "Worker threads, 0 for all cores")
      ->capture_default_str();
  app.add_option("--synthetic", spec.synthetic_count, "Append N generated images")
      ->capture_default_str();
  app.add_option("--synthetic-size", spec.synthetic_size, "Side of generated images")
      ->capture_default_str();
  app.add_option("--synthetic-frames", spec.synthetic_frames,
                 "Frames of a generated static video")
      ->capture_default_str();
  app.add_option("--refs", spec.search_refs, "References per image in search-rate")
      ->capture_default_str();
  app.add_option("--trials", spec.search_trials, "Noise draws averaged in search-rate")
      ->capture_default_str();
  app.add_option("--schemes", schemes,
                 "green-guided,green-only,opponent-mean,full-rgb (default all)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  harness::Mode m;
  try {
    m = harness::mode_from_string(mode);
    for (const auto& in : inputs) spec.inputs.emplace_back(in);
    spec.output_dir = output;
    spec.report_path = report;
    if (!sigma_rgb.empty()) spec.sigma_rgb = {sigma_rgb[0], sigma_rgb[1], sigma_rgb[2]};
    if (!schemes.empty()) {
      spec.schemes.clear();
      for (const auto& s : schemes) spec.schemes.push_back(search::scheme_from_string(s));
    }
    if (cfg.video && window->count() == 0) cfg.window = DenoiseConfig::video_defaults().window;
    if (m == harness::Mode::SearchRate && k->count() == 0) cfg.group_size = 60;
    spec.mode = m;
    spec.validate();
  } catch (const ConfigError& e) {
    err << "gcpid: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kUsageError;
  }

  try {
    int failures = 0;
    switch (m) {
      case harness::Mode::SynthDenoise: {
        const auto rows = harness::run_synth_denoise(spec);
        if (report.empty()) out << harness::report_csv(rows);
        failures = count_failures(rows);
        break;
      }
      case harness::Mode::Denoise: {
        const auto rows = harness::run_denoise(spec);
        if (report.empty()) out << harness::report_csv(rows);
        failures = count_failures(rows);
        break;
      }
      case harness::Mode::SearchRate: {
        const auto rows = harness::run_search_rate(spec);
        if (report.empty()) out << harness::search_rate_csv(rows);
        failures = count_failures(rows);
        break;
      }
      case harness::Mode::Metrics: {
        const auto rows = harness::run_metrics(spec);
        if (report.empty()) out << harness::metrics_csv(rows);
        break;
      }
    }
    if (failures > 0) {
      err << "gcpid: " << failures << " item(s) failed; see the status column\n";
      return kRuntimeFailure;
    }
  } catch (const std::exception& e) {
    err << "gcpid: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return 0;
}

}  // namespace gcpid
