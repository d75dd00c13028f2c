#include <string>

#include "gcpid/error.hpp"
#include "gcpid/talg.hpp"

namespace gcpid::talg {

namespace {

void check_shapes(Index members, Index ps, const std::vector<Tensor3>& patches,
                  const TransformSet& t, const char* what) {
  if (members != t.group_size() || t.group.cols() != members) {
    throw ShapeError(std::string(what) + ": group has " + std::to_string(members) +
                     " members but the group transform is " +
                     std::to_string(t.group.rows()) + "x" + std::to_string(t.group.cols()));
  }
  for (std::size_t f = 0; f < t.row.size(); ++f) {
    if (t.row[f].rows() != ps || t.row[f].cols() != ps || t.col[f].rows() != ps ||
        t.col[f].cols() != ps) {
      throw ShapeError(std::string(what) + ": slice bases do not match patch size " +
                       std::to_string(ps));
    }
  }
  for (const auto& p : patches) {
    if (p.rows() != ps || p.cols() != ps || p.depth() != kTubeLength) {
      throw ShapeError(std::string(what) + ": members must all be ps x ps x 4");
    }
  }
}

// Columns are vectorized patches (slice-major, column-major inside a slice).
Eigen::MatrixXd stack(const std::vector<Tensor3>& patches, Index ps) {
  const Index n = ps * ps * kTubeLength;
  Eigen::MatrixXd x(n, static_cast<Index>(patches.size()));
  for (std::size_t j = 0; j < patches.size(); ++j) {
    for (Index s = 0; s < kTubeLength; ++s) {
      x.col(static_cast<Index>(j)).segment(s * ps * ps, ps * ps) =
          Eigen::Map<const Eigen::VectorXd>(patches[j].slice(s).data(), ps * ps);
    }
  }
  return x;
}

std::vector<Tensor3> unstack(const Eigen::MatrixXd& x, Index ps) {
  std::vector<Tensor3> out;
  out.reserve(static_cast<std::size_t>(x.cols()));
  for (Index j = 0; j < x.cols(); ++j) {
    Tensor3 p(ps, ps, kTubeLength);
    for (Index s = 0; s < kTubeLength; ++s) {
      p.slice(s) = Eigen::Map<const Eigen::MatrixXd>(x.col(j).data() + s * ps * ps, ps, ps);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Per-slice sandwich left[f] * F_f * right[f], slices 0..2, slice 3 mirrored.
template <typename Left, typename Right>
Tensor3 slice_transform(const Tensor3& p, Left left, Right right) {
  FourierTensor f = fft_mode3(p);
  for (std::size_t s = 0; s < 3; ++s) f.slices[s] = left(s) * f.slices[s] * right(s);
  f.slices[3] = f.slices[1].conjugate();
  return ifft_mode3(f);
}

}  // namespace

std::size_t CoeffGroup::total_count() const {
  std::size_t n = 0;
  for (const auto& c : coeffs) n += static_cast<std::size_t>(c.size());
  return n;
}

double CoeffGroup::squared_norm() const {
  double acc = 0.0;
  for (const auto& c : coeffs) acc += c.squared_norm();
  return acc;
}

CoeffGroup forward_transform(const RggbGroup& g, const TransformSet& t) {
  const Index ps = g.patch_size();
  check_shapes(g.size(), ps, g.patches, t, "forward_transform");

  std::vector<Tensor3> sliced;
  sliced.reserve(g.patches.size());
  for (const auto& p : g.patches) {
    sliced.push_back(slice_transform(
        p, [&](std::size_t s) { return t.row[s].adjoint(); },
        [&](std::size_t s) -> const ComplexMatrix& { return t.col[s]; }));
  }
  // coeff_k = sum_j group(k, j) * member_j
  const Eigen::MatrixXd mixed = stack(sliced, ps) * t.group.transpose();

  CoeffGroup c;
  c.coeffs = unstack(mixed, ps);
  c.members = g.members;
  c.retained_count = c.total_count();
  return c;
}

RggbGroup inverse_transform(const CoeffGroup& c, const TransformSet& t) {
  const Index ps = c.coeffs.empty() ? 0 : c.coeffs.front().rows();
  check_shapes(c.size(), ps, c.coeffs, t, "inverse_transform");

  const Eigen::MatrixXd unmixed = stack(c.coeffs, ps) * t.group;
  std::vector<Tensor3> members = unstack(unmixed, ps);

  RggbGroup g;
  g.members = c.members;
  g.patches.reserve(members.size());
  for (const auto& p : members) {
    g.patches.push_back(slice_transform(
        p, [&](std::size_t s) -> const ComplexMatrix& { return t.row[s]; },
        [&](std::size_t s) { return t.col[s].adjoint(); }));
  }
  return g;
}

}  // namespace gcpid::talg
