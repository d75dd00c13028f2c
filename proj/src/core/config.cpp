#include "gcpid/config.hpp"

#include <cmath>

#include "gcpid/error.hpp"

namespace gcpid {

void DenoiseConfig::validate() const {
  if (patch_size < 2) throw ConfigError("DenoiseConfig: ps must be >= 2");
  if (group_size < 1) throw ConfigError("DenoiseConfig: K must be >= 1");
  if (window < patch_size) throw ConfigError("DenoiseConfig: W must be >= ps");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("DenoiseConfig: lambda must be > 0");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("DenoiseConfig: sigma must be >= 0");
  }
  if (!(tau_scale >= 0.0) || !std::isfinite(tau_scale)) {
    throw ConfigError("DenoiseConfig: tau_scale must be >= 0");
  }
  if (stride < 1) throw ConfigError("DenoiseConfig: stride must be >= 1");
  if (frames < 1) throw ConfigError("DenoiseConfig: frame count must be >= 1");
}

}  // namespace gcpid
