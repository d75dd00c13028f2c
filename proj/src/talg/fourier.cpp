#include <algorithm>
#include <cmath>
#include <string>

#include "gcpid/error.hpp"
#include "gcpid/talg.hpp"

namespace gcpid::talg {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

}  // namespace

double FourierTensor::symmetry_defect() const {
  double scale = 1.0;
  for (const auto& s : slices) {
    if (s.size() > 0) scale = std::max(scale, s.cwiseAbs().maxCoeff());
  }
  double defect = 0.0;
  if (slices[0].size() > 0) {
    defect = std::max(defect, slices[0].imag().cwiseAbs().maxCoeff());
    defect = std::max(defect, slices[2].imag().cwiseAbs().maxCoeff());
    defect = std::max(defect, (slices[3] - slices[1].conjugate()).cwiseAbs().maxCoeff());
  }
  return defect / scale;
}

FourierTensor fft_mode3(const Tensor3& t) {
  if (t.depth() != kTubeLength) {
    throw ShapeError("fft_mode3: tube length must be 4, got " + std::to_string(t.depth()));
  }
  const auto& x0 = t.slice(0);
  const auto& x1 = t.slice(1);
  const auto& x2 = t.slice(2);
  const auto& x3 = t.slice(3);

  FourierTensor f;
  f.slices[0] = (x0 + x1 + x2 + x3).cast<std::complex<double>>();
  f.slices[2] = (x0 - x1 + x2 - x3).cast<std::complex<double>>();
  // W row 2: x0 - i x1 - x2 + i x3
  f.slices[1] = (x0 - x2).cast<std::complex<double>>() + kI * (x3 - x1).cast<std::complex<double>>();
  f.slices[3] = f.slices[1].conjugate();
  return f;
}

Tensor3 ifft_mode3(const FourierTensor& f) {
  const double defect = f.symmetry_defect();
  if (defect > kSymmetryTolerance) {
    throw InconsistencyError("ifft_mode3: Fourier slices are not conjugate symmetric (defect " +
                             std::to_string(defect) + ")");
  }
  const auto& f0 = f.slices[0];
  const auto& f1 = f.slices[1];
  const auto& f2 = f.slices[2];
  const auto& f3 = f.slices[3];

  // x_j = (1/4) sum_k F_k i^(jk)
  std::vector<Eigen::MatrixXd> x(4);
  x[0] = (0.25 * (f0 + f1 + f2 + f3)).real();
  x[1] = (0.25 * (f0 + kI * f1 - f2 - kI * f3)).real();
  x[2] = (0.25 * (f0 - f1 + f2 - f3)).real();
  x[3] = (0.25 * (f0 - kI * f1 - f2 + kI * f3)).real();
  return Tensor3::from_slices(std::move(x));
}

Eigen::MatrixXd bcirc(const Tensor3& t) {
  const Index n1 = t.rows();
  const Index n2 = t.cols();
  const Index n3 = t.depth();
  Eigen::MatrixXd m(n1 * n3, n2 * n3);
  for (Index i = 0; i < n3; ++i) {
    for (Index j = 0; j < n3; ++j) {
      m.block(i * n1, j * n2, n1, n2) = t.slice(((i - j) % n3 + n3) % n3);
    }
  }
  return m;
}

Tensor3 unbcirc(const Eigen::MatrixXd& m, Index depth) {
  if (depth < 1 || m.rows() % depth != 0 || m.cols() % depth != 0) {
    throw ShapeError("unbcirc: matrix is not block circulant with the given depth");
  }
  const Index n1 = m.rows() / depth;
  const Index n2 = m.cols() / depth;
  std::vector<Eigen::MatrixXd> slices;
  slices.reserve(static_cast<std::size_t>(depth));
  for (Index k = 0; k < depth; ++k) slices.emplace_back(m.block(k * n1, 0, n1, n2));
  return Tensor3::from_slices(std::move(slices));
}

}  // namespace gcpid::talg
