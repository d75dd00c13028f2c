#pragma once

namespace gcpid {

/// Tunables of the denoiser. Defaults follow the published image setup.
struct DenoiseConfig {
  int patch_size = 8;      ///< ps
  int window = 20;         ///< W, side of the search box (16 for video)
  int group_size = 30;     ///< K, similar patches per group
  double lambda = 0.8;     ///< green-dominance threshold
  double sigma = 0.0;      ///< noise std on the [0, 255] scale
  double tau_scale = 1.1;  ///< multiplier of the universal threshold
  int stride = 4;          ///< reference grid step
  bool video = false;
  int frames = 1;          ///< N_f, only read when video is set
  unsigned workers = 1;    ///< 0 picks std::thread::hardware_concurrency()

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  static DenoiseConfig image_defaults() { return {}; }
  static DenoiseConfig video_defaults() {
    DenoiseConfig cfg;
    cfg.window = 16;
    cfg.video = true;
    return cfg;
  }
};

}  // namespace gcpid
