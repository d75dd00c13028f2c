#pragma once

// t-product / t-SVD algebra over length-4 tubes.
//
// The mode-3 DFT is the unnormalized 4-point matrix
//   [1 1 1 1; 1 -i -1 i; 1 -1 1 -1; 1 i -1 -i]
// and the inverse carries the 1/4 factor. For real input, Fourier slices 0
// and 2 are real and slice 3 is the conjugate of slice 1; every routine here
// computes slices 0..2 and mirrors slice 3.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gcpid/image.hpp"
#include "gcpid/tensor.hpp"

namespace gcpid::talg {

inline constexpr Index kTubeLength = 4;
inline constexpr double kSymmetryTolerance = 1e-9;

using ComplexMatrix = Eigen::MatrixXcd;
using FourierSlices = std::array<ComplexMatrix, kTubeLength>;

/// Mode-3 DFT of a real n1 x n2 x 4 tensor.
struct FourierTensor {
  FourierSlices slices;

  [[nodiscard]] Index rows() const { return slices[0].rows(); }
  [[nodiscard]] Index cols() const { return slices[0].cols(); }

  /// Largest violation of the real-tube structure (imag of slices 0/2 and
  /// slice3 - conj(slice1)), relative to max(1, largest magnitude).
  [[nodiscard]] double symmetry_defect() const;
};

/// Closed-form mode-3 FFT: slices [R+2G+B, (R-G)+(B-G)i, R-B, (R-G)+(G-B)i]
/// for an RGGB patch. Requires depth 4.
FourierTensor fft_mode3(const Tensor3& t);

/// Inverse of fft_mode3. Throws InconsistencyError when symmetry_defect()
/// exceeds kSymmetryTolerance.
Tensor3 ifft_mode3(const FourierTensor& f);

/// Block circulant matrix (n1*n3) x (n2*n3); block (i, j) is slice (i-j) mod n3.
Eigen::MatrixXd bcirc(const Tensor3& t);

/// First block column of a block circulant matrix, as an (rows/depth) x cols x depth tensor.
Tensor3 unbcirc(const Eigen::MatrixXd& m, Index depth);

/// t-product through the Fourier domain (slicewise complex products).
Tensor3 t_product(const Tensor3& a, const Tensor3& b);

/// t-product through the block circulant definition. Slow; reference path.
Tensor3 t_product_bcirc(const Tensor3& a, const Tensor3& b);

/// Transpose each frontal slice and reverse the order of slices 1..n3-1.
Tensor3 t_transpose(const Tensor3& a);

/// n x n x depth tensor whose first frontal slice is the identity.
Tensor3 t_identity(Index n, Index depth = kTubeLength);

struct TSvd {
  Tensor3 u;  ///< n1 x n1 x 4, t-orthogonal
  Tensor3 s;  ///< n1 x n2 x 4, f-diagonal
  Tensor3 v;  ///< n2 x n2 x 4, t-orthogonal
  /// Diagonal of each Fourier slice of s, nonnegative and non-increasing.
  std::array<Eigen::VectorXd, kTubeLength> singular_values;
};

/// a = u * s * t_transpose(v).
TSvd t_svd(const Tensor3& a);

// ---------------------------------------------------------------------------
// Learned per-group transforms

/// Per-Fourier-slice row/column unitary bases (columns are basis vectors).
struct SliceBases {
  FourierSlices row;
  FourierSlices col;
};

/// Bases shared by every member of the group: for each Fourier slice f,
/// row[f] holds eigenvectors of sum_i P_i P_i^H and col[f] eigenvectors of
/// sum_i P_i^H P_i, by descending eigenvalue. Eigenvector phases are fixed
/// so the largest-magnitude entry is real positive; an all-zero slice
/// yields the identity.
SliceBases learn_slice_bases(const RggbGroup& g);

/// K x K orthogonal analysis matrix whose ROWS are the eigenvectors of the
/// Gram matrix of the vectorized RGGB patches (descending eigenvalue, largest
/// entry positive). Mixing along the group mode is coeff_k = sum_j U(k, j) P_j.
Eigen::MatrixXd learn_group_pca(const RggbGroup& g);

struct TransformSet {
  FourierSlices row;
  FourierSlices col;
  Eigen::MatrixXd group;

  [[nodiscard]] Index patch_size() const { return row[0].rows(); }
  [[nodiscard]] Index group_size() const { return group.rows(); }

  static TransformSet identity(Index ps, Index k);

  /// Max Frobenius deviation from unitarity over all bases, also counting
  /// any mismatch between slice 3 and the conjugate of slice 1.
  [[nodiscard]] double orthogonality_defect() const;
};

/// learn_slice_bases + learn_group_pca.
TransformSet learn_transform(const RggbGroup& g);

/// Transform-domain coefficients of a group, real ps x ps x 4 per member.
struct CoeffGroup {
  std::vector<Tensor3> coeffs;
  std::vector<PatchRef> members;
  std::size_t retained_count = 0;

  [[nodiscard]] Index size() const noexcept { return static_cast<Index>(coeffs.size()); }
  [[nodiscard]] std::size_t total_count() const;
  [[nodiscard]] double squared_norm() const;
};

/// Slice transforms U_row^H P U_col per Fourier slice, group mixing along
/// the member mode, inverse FFT back to real coefficients.
CoeffGroup forward_transform(const RggbGroup& g, const TransformSet& t);

/// Adjoint (and inverse) of forward_transform.
RggbGroup inverse_transform(const CoeffGroup& c, const TransformSet& t);

}  // namespace gcpid::talg
