#include "gcpid/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "../common/parallel.hpp"
#include "gcpid/denoise.hpp"
#include "gcpid/error.hpp"
#include "gcpid/io.hpp"
#include "gcpid/synth.hpp"

namespace gcpid::harness {

namespace fs = std::filesystem;

namespace {

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_atomic(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string() + ": cannot open for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw IoError(tmp.string() + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(path.string() + ": cannot replace report");
  }
}

// Clean material an experiment runs on: a single image or a sequence.
struct Item {
  std::string id;
  fs::path source;  // empty for synthetic items
  std::optional<VideoSequence> clean;
};

std::string item_id(const fs::path& p) {
  const fs::path name = p.filename().empty() ? p.parent_path().filename() : p.filename();
  return name.string();
}

std::vector<Item> collect_items(const ExperimentSpec& spec) {
  std::vector<Item> items;
  for (const auto& p : spec.inputs) items.push_back({item_id(p), p, std::nullopt});
  for (auto& s : synth::make_corpus(spec.synthetic_count, spec.synthetic_size,
                                    spec.synthetic_size, spec.seed)) {
    const int frames = spec.config.video ? spec.synthetic_frames : 1;
    std::vector<Image> seq(static_cast<std::size_t>(frames), s.image);
    items.push_back({s.id, {}, VideoSequence(std::move(seq))});
  }
  return items;
}

VideoSequence load_clean(const Item& item, bool video) {
  if (item.clean) return *item.clean;
  if (video) return io::load_video(item.source);
  return VideoSequence({io::load_image(item.source)});
}

struct NoiseLevel {
  std::string label;
  std::optional<double> sigma;
  std::array<double, 3> rgb{};
  double denoise_sigma = 0.0;
};

std::vector<NoiseLevel> noise_levels(const ExperimentSpec& spec) {
  std::vector<NoiseLevel> out;
  if (spec.sigma_rgb) {
    const auto& s = *spec.sigma_rgb;
    NoiseLevel n;
    n.label = format_short(s[0]) + "/" + format_short(s[1]) + "/" + format_short(s[2]);
    n.rgb = s;
    // The denoiser takes one sigma; the RMS of the channels matches the
    // total noise energy.
    n.denoise_sigma = std::sqrt((s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) / 3.0);
    out.push_back(n);
    return out;
  }
  for (double s : spec.sigmas) {
    NoiseLevel n;
    n.label = format_short(s);
    n.sigma = s;
    n.denoise_sigma = s;
    out.push_back(n);
  }
  return out;
}

Image add_noise(const Image& clean, const NoiseLevel& level, std::uint64_t seed) {
  return level.sigma ? add_awgn(clean, *level.sigma, seed) : add_awgn(clean, level.rgb, seed);
}

// Mean per-frame metric.
template <typename Metric>
double sequence_metric(const VideoSequence& a, const VideoSequence& b, bool quantize_first,
                       Metric metric) {
  double acc = 0.0;
  for (int f = 0; f < a.frame_count(); ++f) {
    const Image x = quantize_first ? to_image(quantize(a.frame(f))) : a.frame(f);
    const Image y = quantize_first ? to_image(quantize(b.frame(f))) : b.frame(f);
    acc += metric(x, y);
  }
  return acc / a.frame_count();
}

unsigned batch_workers(const ExperimentSpec& spec, std::size_t items, DenoiseConfig& inner) {
  const unsigned workers = detail::resolve_workers(spec.config.workers);
  inner = spec.config;
  if (workers > 1 && items > 1) inner.workers = 1;
  return items > 1 ? workers : 1;
}

std::string error_status(const std::exception& e) { return std::string("error: ") + e.what(); }

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Denoise:
      return "denoise";
    case Mode::SynthDenoise:
      return "synth-denoise";
    case Mode::SearchRate:
      return "search-rate";
    case Mode::Metrics:
      return "metrics";
  }
  return "unknown";
}

Mode mode_from_string(std::string_view name) {
  for (Mode m : {Mode::Denoise, Mode::SynthDenoise, Mode::SearchRate, Mode::Metrics}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  config.validate();
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw ConfigError("--sigma: values must be >= 0");
  }
  if (sigma_rgb) {
    for (double s : *sigma_rgb) {
      if (!(s >= 0.0)) throw ConfigError("--sigma-rgb: values must be >= 0");
    }
  }
  if (synthetic_count < 0) throw ConfigError("synthetic count must be >= 0");
  if (synthetic_count > 0 && synthetic_size < config.patch_size) {
    throw ConfigError("synthetic size must be at least the patch size");
  }
  if (synthetic_frames < 1) throw ConfigError("synthetic frames must be >= 1");
  const bool has_noise = !sigmas.empty() || sigma_rgb.has_value();
  switch (mode) {
    case Mode::Denoise:
      if (sigmas.empty()) throw ConfigError("denoise mode requires --sigma");
      if (inputs.empty()) throw ConfigError("denoise mode requires --input");
      if (output_dir.empty()) throw ConfigError("denoise mode requires --output");
      break;
    case Mode::SynthDenoise:
      if (!has_noise) throw ConfigError("synth-denoise mode requires --sigma or --sigma-rgb");
      break;
    case Mode::SearchRate:
      if (!has_noise) throw ConfigError("search-rate mode requires --sigma or --sigma-rgb");
      if (search_refs < 1) throw ConfigError("search-rate needs at least one reference");
      if (search_trials < 1) throw ConfigError("search-rate needs at least one trial");
      if (schemes.empty()) throw ConfigError("search-rate needs at least one scheme");
      break;
    case Mode::Metrics:
      if (inputs.size() < 2) {
        throw ConfigError("metrics mode requires --input REFERENCE TEST [TEST...]");
      }
      break;
  }
}

std::string config_summary(const DenoiseConfig& cfg) {
  return "ps=" + std::to_string(cfg.patch_size) + ";W=" + std::to_string(cfg.window) +
         ";K=" + std::to_string(cfg.group_size) + ";lambda=" + format_short(cfg.lambda) +
         ";tau_scale=" + format_short(cfg.tau_scale) + ";stride=" + std::to_string(cfg.stride) +
         (cfg.video ? ";video" : "");
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view id, std::size_t sigma_index,
                          std::size_t trial) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(sigma_index), static_cast<std::uint32_t>(trial)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<ReportRow> run_synth_denoise(const ExperimentSpec& spec) {
  spec.validate();
  const auto items = collect_items(spec);
  const auto levels = noise_levels(spec);
  struct Task {
    std::size_t item;
    std::size_t level;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t l = 0; l < levels.size(); ++l) tasks.push_back({i, l});
  }

  DenoiseConfig inner;
  const unsigned workers = batch_workers(spec, tasks.size(), inner);
  std::vector<ReportRow> rows(tasks.size());
  detail::parallel_for(tasks.size(), workers, [&](std::size_t t) {
    const Item& item = items[tasks[t].item];
    const NoiseLevel& level = levels[tasks[t].level];
    ReportRow& row = rows[t];
    row.image_id = item.id;
    row.sigma = level.label;
    DenoiseConfig cfg = inner;
    cfg.sigma = level.denoise_sigma;
    row.config = config_summary(cfg);
    try {
      const VideoSequence clean = load_clean(item, spec.config.video);
      std::vector<Image> noisy_frames;
      for (int f = 0; f < clean.frame_count(); ++f) {
        noisy_frames.push_back(add_noise(clean.frame(f), level,
                                         derive_seed(spec.seed, item.id, tasks[t].level,
                                                     static_cast<std::size_t>(f))));
      }
      const VideoSequence noisy(std::move(noisy_frames));
      const auto start = std::chrono::steady_clock::now();
      const VideoSequence denoised = spec.config.video
                                         ? denoise_video(noisy, cfg)
                                         : VideoSequence({denoise_image(noisy.frame(0), cfg)});
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const bool q = spec.quantize_metrics;
      row.psnr_noisy = sequence_metric(clean, noisy, q, [](auto& a, auto& b) { return metrics::psnr(a, b); });
      row.psnr_denoised = sequence_metric(clean, denoised, q, [](auto& a, auto& b) { return metrics::psnr(a, b); });
      row.ssim_noisy = sequence_metric(clean, noisy, q, [](auto& a, auto& b) { return metrics::ssim(a, b); });
      row.ssim_denoised = sequence_metric(clean, denoised, q, [](auto& a, auto& b) { return metrics::ssim(a, b); });
    } catch (const std::exception& e) {
      const double nan = std::nan("");
      row.psnr_noisy = row.psnr_denoised = row.ssim_noisy = row.ssim_denoised = nan;
      row.status = error_status(e);
    }
  });

  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ia = items[tasks[a].item].id;
    const auto& ib = items[tasks[b].item].id;
    if (ia != ib) return ia < ib;
    return tasks[a].level < tasks[b].level;
  });
  std::vector<ReportRow> sorted;
  sorted.reserve(rows.size());
  for (std::size_t i : order) sorted.push_back(std::move(rows[i]));
  if (!spec.report_path.empty()) write_report_csv(sorted, spec.report_path);
  return sorted;
}

std::vector<ReportRow> run_denoise(const ExperimentSpec& spec) {
  spec.validate();
  std::error_code ec;
  fs::create_directories(spec.output_dir, ec);
  if (ec) throw IoError(spec.output_dir.string() + ": cannot create directory");

  DenoiseConfig inner;
  const unsigned workers = batch_workers(spec, spec.inputs.size(), inner);
  inner.sigma = spec.sigmas.front();
  std::vector<ReportRow> rows(spec.inputs.size());
  detail::parallel_for(spec.inputs.size(), workers, [&](std::size_t i) {
    const fs::path& in = spec.inputs[i];
    ReportRow& row = rows[i];
    row.image_id = item_id(in);
    row.sigma = format_short(inner.sigma);
    row.config = config_summary(inner);
    const double nan = std::nan("");
    row.psnr_noisy = row.psnr_denoised = row.ssim_noisy = row.ssim_denoised = nan;
    try {
      const fs::path out = spec.output_dir / item_id(in);
      if (fs::exists(out) && fs::equivalent(out, in)) {
        throw IoError(out.string() + ": output would overwrite the input");
      }
      const auto start = std::chrono::steady_clock::now();
      if (spec.config.video) {
        const VideoSequence result = denoise_video(io::load_video(in), inner);
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        io::save_video(result, out);
      } else {
        const Image result = denoise_image(io::load_image(in), inner);
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        io::save_image(result, out);
      }
    } catch (const std::exception& e) {
      row.status = error_status(e);
    }
  });
  if (!spec.report_path.empty()) write_report_csv(rows, spec.report_path);
  return rows;
}

std::vector<SearchRateRow> run_search_rate(const ExperimentSpec& spec) {
  spec.validate();
  const auto items = collect_items(spec);
  const auto levels = noise_levels(spec);
  const auto& schemes = spec.schemes;
  const std::size_t per_item = levels.size() * schemes.size();
  const std::size_t n_tasks = items.size() * levels.size();

  DenoiseConfig inner;
  const unsigned workers = batch_workers(spec, n_tasks, inner);
  std::vector<SearchRateRow> rows(items.size() * per_item);
  detail::parallel_for(n_tasks, workers, [&](std::size_t t) {
    const std::size_t i = t / levels.size();
    const std::size_t l = t % levels.size();
    const Item& item = items[i];
    auto* out = rows.data() + i * per_item + l * schemes.size();
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      out[s].image_id = item.id;
      out[s].sigma = levels[l].label;
      out[s].scheme = std::string(search::to_string(schemes[s]));
      out[s].group_size = inner.group_size;
      out[s].window = inner.window;
      out[s].refs = spec.search_refs;
    }
    try {
      const Image clean = load_clean(item, false).frame(0);
      std::vector<double> acc(schemes.size(), 0.0);
      for (int trial = 0; trial < spec.search_trials; ++trial) {
        const std::uint64_t s =
            derive_seed(spec.seed, item.id, l, static_cast<std::size_t>(trial));
        const Image noisy = add_noise(clean, levels[l], s);
        const auto refs = search::sample_references(clean.height(), clean.width(),
                                                    inner.patch_size, spec.search_refs, s + 1);
        for (std::size_t k = 0; k < schemes.size(); ++k) {
          acc[k] += search::search_overlap(clean, noisy, refs, inner, schemes[k]);
        }
      }
      for (std::size_t k = 0; k < schemes.size(); ++k) out[k].rate = acc[k] / spec.search_trials;
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < schemes.size(); ++k) {
        out[k].rate = std::nan("");
        out[k].status = error_status(e);
      }
    }
  });

  std::stable_sort(rows.begin(), rows.end(), [](const SearchRateRow& a, const SearchRateRow& b) {
    return a.image_id < b.image_id;
  });
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (std::size_t k = 0; k < schemes.size(); ++k) {
      SearchRateRow mean;
      mean.image_id = "mean";
      mean.sigma = levels[l].label;
      mean.scheme = std::string(search::to_string(schemes[k]));
      mean.group_size = inner.group_size;
      mean.window = inner.window;
      mean.refs = spec.search_refs;
      int n = 0;
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& r = rows[i * per_item + l * schemes.size() + k];
        if (r.status == "ok") {
          mean.rate += r.rate;
          ++n;
        }
      }
      if (n > 0) {
        mean.rate /= n;
      } else {
        mean.rate = std::nan("");
        mean.status = "error: no successful rows";
      }
      rows.push_back(mean);
    }
  }
  if (!spec.report_path.empty()) write_search_rate_csv(rows, spec.report_path);
  return rows;
}

std::vector<metrics::MetricsReport> run_metrics(const ExperimentSpec& spec) {
  spec.validate();
  const Image reference = io::load_image(spec.inputs.front());
  std::vector<metrics::MetricsReport> out;
  for (std::size_t i = 1; i < spec.inputs.size(); ++i) {
    out.push_back(metrics::evaluate(item_id(spec.inputs[i]), reference,
                                    io::load_image(spec.inputs[i]), spec.quantize_metrics));
  }
  if (!spec.report_path.empty()) write_metrics_csv(out, spec.report_path);
  return out;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "image_id,sigma,config,psnr_noisy,psnr_denoised,ssim_noisy,ssim_denoised,wall_seconds,"
        "status\n";
  for (const auto& r : rows) {
    os << csv_field(r.image_id) << ',' << csv_field(r.sigma) << ',' << csv_field(r.config) << ','
       << format_number(r.psnr_noisy, 4) << ',' << format_number(r.psnr_denoised, 4) << ','
       << format_number(r.ssim_noisy, 6) << ',' << format_number(r.ssim_denoised, 6) << ','
       << format_number(r.wall_seconds, 3) << ',' << csv_field(r.status) << '\n';
  }
  return os.str();
}

std::string search_rate_csv(const std::vector<SearchRateRow>& rows) {
  std::ostringstream os;
  os << "image_id,sigma,scheme,k,window,refs,rate,status\n";
  for (const auto& r : rows) {
    os << csv_field(r.image_id) << ',' << csv_field(r.sigma) << ',' << r.scheme << ','
       << r.group_size << ',' << r.window << ',' << r.refs << ',' << format_number(r.rate, 6)
       << ',' << csv_field(r.status) << '\n';
  }
  return os.str();
}

std::string metrics_csv(const std::vector<metrics::MetricsReport>& rows) {
  std::ostringstream os;
  os << "image_id,psnr,ssim,psnr_r,psnr_g,psnr_b,ssim_r,ssim_g,ssim_b\n";
  for (const auto& r : rows) {
    os << csv_field(r.id) << ',' << format_number(r.psnr, 4) << ',' << format_number(r.ssim, 6);
    for (double v : r.channel_psnr) os << ',' << format_number(v, 4);
    for (double v : r.channel_ssim) os << ',' << format_number(v, 6);
    os << '\n';
  }
  return os.str();
}

void write_report_csv(const std::vector<ReportRow>& rows, const fs::path& path) {
  write_atomic(path, report_csv(rows));
}

void write_search_rate_csv(const std::vector<SearchRateRow>& rows, const fs::path& path) {
  write_atomic(path, search_rate_csv(rows));
}

void write_metrics_csv(const std::vector<metrics::MetricsReport>& rows, const fs::path& path) {
  write_atomic(path, metrics_csv(rows));
}

}  // namespace gcpid::harness
