#include <string>

#include "eigen_order.hpp"
#include "gcpid/error.hpp"
#include "gcpid/talg.hpp"

namespace gcpid::talg {

namespace {

void require_tubes(const Tensor3& t, const char* what) {
  if (t.depth() != kTubeLength) {
    throw ShapeError(std::string(what) + ": tube length must be 4, got " +
                     std::to_string(t.depth()));
  }
}

// Mirror slice 1 into slice 3 and return to the real domain. The mirrored
// layout is symmetric by construction, so the check in ifft_mode3 is skipped.
Tensor3 to_real(FourierTensor& f) {
  f.slices[3] = f.slices[1].conjugate();
  const auto& f0 = f.slices[0];
  const auto& f1 = f.slices[1];
  const auto& f2 = f.slices[2];
  std::vector<Eigen::MatrixXd> x(4);
  const Eigen::MatrixXd re1 = f1.real();
  const Eigen::MatrixXd im1 = f1.imag();
  const Eigen::MatrixXd r0 = f0.real();
  const Eigen::MatrixXd r2 = f2.real();
  x[0] = 0.25 * (r0 + 2.0 * re1 + r2);
  x[1] = 0.25 * (r0 - 2.0 * im1 - r2);
  x[2] = 0.25 * (r0 - 2.0 * re1 + r2);
  x[3] = 0.25 * (r0 + 2.0 * im1 - r2);
  return Tensor3::from_slices(std::move(x));
}

}  // namespace

Tensor3 t_product(const Tensor3& a, const Tensor3& b) {
  require_tubes(a, "t_product");
  require_tubes(b, "t_product");
  if (a.cols() != b.rows()) {
    throw ShapeError("t_product: inner dimensions differ (" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + ")");
  }
  const FourierTensor fa = fft_mode3(a);
  const FourierTensor fb = fft_mode3(b);
  FourierTensor fc;
  for (int f = 0; f < 3; ++f) fc.slices[f] = fa.slices[f] * fb.slices[f];
  return to_real(fc);
}

Tensor3 t_product_bcirc(const Tensor3& a, const Tensor3& b) {
  if (a.depth() != b.depth()) throw ShapeError("t_product_bcirc: tube lengths differ");
  if (a.cols() != b.rows()) throw ShapeError("t_product_bcirc: inner dimensions differ");
  const Eigen::MatrixXd c = bcirc(a) * bcirc(b);
  return unbcirc(c, a.depth());
}

Tensor3 t_transpose(const Tensor3& a) {
  const Index n3 = a.depth();
  std::vector<Eigen::MatrixXd> slices(static_cast<std::size_t>(n3));
  for (Index k = 0; k < n3; ++k) {
    slices[static_cast<std::size_t>(k)] = a.slice((n3 - k) % n3).transpose();
  }
  return Tensor3::from_slices(std::move(slices));
}

Tensor3 t_identity(Index n, Index depth) {
  Tensor3 t(n, n, depth);
  if (depth > 0) t.slice(0).setIdentity();
  return t;
}

TSvd t_svd(const Tensor3& a) {
  require_tubes(a, "t_svd");
  const Index n1 = a.rows();
  const Index n2 = a.cols();
  const Index r = std::min(n1, n2);
  const FourierTensor fa = fft_mode3(a);

  FourierTensor fu;
  FourierTensor fs;
  FourierTensor fv;
  TSvd out;
  for (int f = 0; f < 3; ++f) {
    Eigen::MatrixXcd u;
    Eigen::MatrixXcd v;
    Eigen::VectorXd sv;
    if (f == 1) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(fa.slices[f],
                                             Eigen::ComputeFullU | Eigen::ComputeFullV);
      u = svd.matrixU();
      v = svd.matrixV();
      sv = svd.singularValues();
    } else {
      // DC and Nyquist slices are real; keep their factors real.
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(fa.slices[f].real(),
                                            Eigen::ComputeFullU | Eigen::ComputeFullV);
      u = svd.matrixU().cast<std::complex<double>>();
      v = svd.matrixV().cast<std::complex<double>>();
      sv = svd.singularValues();
    }
    // Paired phase fix keeps u_j s_j v_j^H unchanged.
    for (Index j = 0; j < r; ++j) {
      const Eigen::VectorXcd col = u.col(j);
      const std::complex<double> ph = detail::phase_factor(col);
      u.col(j) *= ph;
      v.col(j) *= ph;
    }
    for (Index j = r; j < n1; ++j) detail::fix_phase(u.col(j));
    for (Index j = r; j < n2; ++j) detail::fix_phase(v.col(j));

    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n1, n2);
    for (Index j = 0; j < r; ++j) s(j, j) = sv(j);
    fu.slices[f] = std::move(u);
    fv.slices[f] = std::move(v);
    fs.slices[f] = std::move(s);
    out.singular_values[static_cast<std::size_t>(f)] = sv;
  }
  out.singular_values[3] = out.singular_values[1];
  out.u = to_real(fu);
  out.s = to_real(fs);
  out.v = to_real(fv);
  return out;
}

}  // namespace gcpid::talg
