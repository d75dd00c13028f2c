#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace gcpid {

using Index = Eigen::Index;

/// Real third-order tensor stored as a list of frontal slices.
///
/// Slice k is a rows() x cols() matrix; entry (i, j, k) is slice(k)(i, j).
/// Patches use row = image y and col = image x.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(Index rows, Index cols, Index depth);

  static Tensor3 from_slices(std::vector<Eigen::MatrixXd> slices);

  [[nodiscard]] Index rows() const noexcept { return rows_; }
  [[nodiscard]] Index cols() const noexcept { return cols_; }
  [[nodiscard]] Index depth() const noexcept {
    return static_cast<Index>(slices_.size());
  }
  [[nodiscard]] Index size() const noexcept { return rows_ * cols_ * depth(); }

  [[nodiscard]] Eigen::MatrixXd& slice(Index k) { return slices_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] const Eigen::MatrixXd& slice(Index k) const {
    return slices_[static_cast<std::size_t>(k)];
  }

  double& operator()(Index i, Index j, Index k) { return slice(k)(i, j); }
  double operator()(Index i, Index j, Index k) const { return slice(k)(i, j); }

  [[nodiscard]] double squared_norm() const;
  [[nodiscard]] double norm() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool all_finite() const;

  Tensor3& operator+=(const Tensor3& other);
  Tensor3& operator-=(const Tensor3& other);
  Tensor3& operator*=(double s);

  [[nodiscard]] bool same_shape(const Tensor3& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ && depth() == other.depth();
  }

  friend bool operator==(const Tensor3& a, const Tensor3& b);

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Eigen::MatrixXd> slices_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(double s, Tensor3 a);

/// Largest absolute elementwise difference; throws ShapeError on mismatch.
double max_abs_diff(const Tensor3& a, const Tensor3& b);

}  // namespace gcpid
