#pragma once

// Deterministic eigen/singular vector conventions shared by the talg sources.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace gcpid::talg::detail {

inline double real_part(double v) { return v; }
inline double imag_part(double) { return 0.0; }
inline double real_part(const std::complex<double>& v) { return v.real(); }
inline double imag_part(const std::complex<double>& v) { return v.imag(); }

/// Index of the first entry of largest magnitude.
template <typename Vec>
Eigen::Index dominant_index(const Vec& v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return best;
}

/// Unit-modulus factor that turns the dominant entry of v real positive.
inline double phase_factor(const Eigen::VectorXd& v) {
  return v(dominant_index(v)) < 0.0 ? -1.0 : 1.0;
}

inline std::complex<double> phase_factor(const Eigen::VectorXcd& v) {
  const std::complex<double> d = v(dominant_index(v));
  const double mag = std::abs(d);
  if (mag == 0.0) return {1.0, 0.0};
  return std::conj(d) / mag;
}

/// Multiply by the phase factor and pin the dominant entry to a real value.
template <typename Vec>
void fix_phase(Vec&& v) {
  const Eigen::Index m = dominant_index(v);
  const auto f = phase_factor(Eigen::Matrix<typename std::decay_t<Vec>::Scalar, Eigen::Dynamic, 1>(v));
  v *= f;
  v(m) = std::abs(v(m));
}

/// Lexicographic "a before b": larger real part first, then larger imag part.
template <typename Vec>
bool component_precedes(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (real_part(a(i)) != real_part(b(i))) return real_part(a(i)) > real_part(b(i));
    if (imag_part(a(i)) != imag_part(b(i))) return imag_part(a(i)) > imag_part(b(i));
  }
  return false;
}

/// Eigenvectors (as columns) of a self-adjoint matrix, ordered by descending
/// eigenvalue; runs of eigenvalues equal to within a relative 1e-12 are
/// ordered by first differing component. A zero matrix yields the identity.
template <typename Matrix>
Matrix ordered_eigenvectors(const Matrix& selfadjoint, Eigen::VectorXd* eigenvalues = nullptr) {
  const Eigen::Index n = selfadjoint.rows();
  if (n == 0 || selfadjoint.cwiseAbs().maxCoeff() == 0.0) {
    if (eigenvalues) *eigenvalues = Eigen::VectorXd::Zero(n);
    return Matrix::Identity(n, n);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(selfadjoint);
  const Eigen::VectorXd values = solver.eigenvalues();  // ascending
  Matrix vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) fix_phase(vectors.col(j));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = n - 1 - j;

  const double scale = values.cwiseAbs().maxCoeff();
  const double tie = 1e-12 * scale;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           std::abs(values(order[end - 1]) - values(order[end])) <= tie) {
      ++end;
    }
    if (end - start > 1) {
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                       order.begin() + static_cast<std::ptrdiff_t>(end),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return component_precedes(vectors.col(a), vectors.col(b));
                       });
    }
    start = end;
  }

  Matrix out(n, n);
  if (eigenvalues) eigenvalues->resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
    if (eigenvalues) (*eigenvalues)(j) = values(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace gcpid::talg::detail
