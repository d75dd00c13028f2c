#include <string>

#include "eigen_order.hpp"
#include "gcpid/error.hpp"
#include "gcpid/talg.hpp"

namespace gcpid::talg {

namespace {

void require_group(const RggbGroup& g, const char* what) {
  if (g.patches.empty()) throw ShapeError(std::string(what) + ": empty group");
  const Index ps = g.patch_size();
  for (const auto& p : g.patches) {
    if (p.rows() != ps || p.cols() != ps || p.depth() != kTubeLength) {
      throw ShapeError(std::string(what) + ": members must all be ps x ps x 4");
    }
  }
}

}  // namespace

SliceBases learn_slice_bases(const RggbGroup& g) {
  require_group(g, "learn_slice_bases");
  const Index ps = g.patch_size();

  std::array<Eigen::MatrixXd, 2> row_real;  // slices 0 and 2
  std::array<Eigen::MatrixXd, 2> col_real;
  for (auto& m : row_real) m = Eigen::MatrixXd::Zero(ps, ps);
  for (auto& m : col_real) m = Eigen::MatrixXd::Zero(ps, ps);
  Eigen::MatrixXcd row1 = Eigen::MatrixXcd::Zero(ps, ps);
  Eigen::MatrixXcd col1 = Eigen::MatrixXcd::Zero(ps, ps);

  for (const auto& p : g.patches) {
    const FourierTensor f = fft_mode3(p);
    for (int s = 0; s < 2; ++s) {
      const Eigen::MatrixXd re = f.slices[static_cast<std::size_t>(2 * s)].real();
      row_real[static_cast<std::size_t>(s)].noalias() += re * re.transpose();
      col_real[static_cast<std::size_t>(s)].noalias() += re.transpose() * re;
    }
    row1.noalias() += f.slices[1] * f.slices[1].adjoint();
    col1.noalias() += f.slices[1].adjoint() * f.slices[1];
  }

  SliceBases b;
  for (int s = 0; s < 2; ++s) {
    const auto fi = static_cast<std::size_t>(2 * s);
    b.row[fi] = detail::ordered_eigenvectors(row_real[static_cast<std::size_t>(s)])
                    .cast<std::complex<double>>();
    b.col[fi] = detail::ordered_eigenvectors(col_real[static_cast<std::size_t>(s)])
                    .cast<std::complex<double>>();
  }
  // Accumulated sums are Hermitian up to rounding; symmetrize before solving.
  b.row[1] = detail::ordered_eigenvectors(Eigen::MatrixXcd(0.5 * (row1 + row1.adjoint())));
  b.col[1] = detail::ordered_eigenvectors(Eigen::MatrixXcd(0.5 * (col1 + col1.adjoint())));
  b.row[3] = b.row[1].conjugate();
  b.col[3] = b.col[1].conjugate();
  return b;
}

Eigen::MatrixXd learn_group_pca(const RggbGroup& g) {
  require_group(g, "learn_group_pca");
  const Index k = g.size();
  const Index ps = g.patch_size();
  const Index n = ps * ps * kTubeLength;

  Eigen::MatrixXd x(n, k);
  for (Index j = 0; j < k; ++j) {
    const Tensor3& p = g.patches[static_cast<std::size_t>(j)];
    for (Index s = 0; s < kTubeLength; ++s) {
      x.col(j).segment(s * ps * ps, ps * ps) =
          Eigen::Map<const Eigen::VectorXd>(p.slice(s).data(), ps * ps);
    }
  }
  Eigen::MatrixXd gram(k, k);
  gram.setZero();
  gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
  gram = gram.selfadjointView<Eigen::Lower>();
  return detail::ordered_eigenvectors(gram).transpose();
}

TransformSet TransformSet::identity(Index ps, Index k) {
  TransformSet t;
  for (auto& m : t.row) m = Eigen::MatrixXcd::Identity(ps, ps);
  for (auto& m : t.col) m = Eigen::MatrixXcd::Identity(ps, ps);
  t.group = Eigen::MatrixXd::Identity(k, k);
  return t;
}

double TransformSet::orthogonality_defect() const {
  double worst = 0.0;
  for (std::size_t f = 0; f < row.size(); ++f) {
    const Index ps = row[f].rows();
    worst = std::max(worst, (row[f].adjoint() * row[f] -
                             Eigen::MatrixXcd::Identity(ps, ps)).norm());
    worst = std::max(worst, (col[f].adjoint() * col[f] -
                             Eigen::MatrixXcd::Identity(ps, ps)).norm());
  }
  worst = std::max(worst, (row[3] - row[1].conjugate()).norm());
  worst = std::max(worst, (col[3] - col[1].conjugate()).norm());
  const Index k = group.rows();
  worst = std::max(worst,
                   (group.transpose() * group - Eigen::MatrixXd::Identity(k, k)).norm());
  return worst;
}

TransformSet learn_transform(const RggbGroup& g) {
  SliceBases b = learn_slice_bases(g);
  TransformSet t;
  t.row = std::move(b.row);
  t.col = std::move(b.col);
  t.group = learn_group_pca(g);
  return t;
}

}  // namespace gcpid::talg
