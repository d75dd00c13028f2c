#pragma once

#include <cstdint>
#include <random>

#include "gcpid/image.hpp"
#include "gcpid/tensor.hpp"

namespace gcpid::testing {

inline Tensor3 random_tensor(Index rows, Index cols, Index depth, std::mt19937_64& rng,
                             double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Tensor3 t(rows, cols, depth);
  for (Index k = 0; k < depth; ++k)
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) t(i, j, k) = n(rng);
  return t;
}

inline Image random_image(int h, int w, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 255.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Image img(h, w, 3);
  for (double& v : img.data()) v = u(rng);
  return img;
}

inline double relative_error(const Tensor3& a, const Tensor3& b) {
  return (a - b).norm() / std::max(1e-300, b.norm());
}

}  // namespace gcpid::testing
