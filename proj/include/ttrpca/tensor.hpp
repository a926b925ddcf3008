#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace ttrpca {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real tensor of order 2..8, stored column-major: the first index
/// varies fastest, so entry (i_0, ..., i_{K-1}) lives at flat offset
/// i_0 + d_0 * (i_1 + d_1 * (i_2 + ...)).
///
/// This layout makes the TT (split) unfolding a pure reshape of the buffer,
/// which is what ties the two unfolding conventions together.
class DenseTensor {
 public:
  DenseTensor() = default;

  /// Zero tensor with the given extents.
  explicit DenseTensor(std::vector<Index> dims);

  /// Adopts existing column-major data; throws std::invalid_argument if the
  /// length does not match the extent product.
  DenseTensor(std::vector<Index> dims, Vector values);

  Index order() const { return static_cast<Index>(dims_.size()); }
  const std::vector<Index>& dims() const { return dims_; }
  Index dim(Index k) const { return dims_[static_cast<std::size_t>(k)]; }
  Index size() const { return values_.size(); }

  Vector& values() { return values_; }
  const Vector& values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  double operator[](Index flat) const { return values_[flat]; }
  double& operator[](Index flat) { return values_[flat]; }

  /// Multi-index access; the number of indices must equal order().
  template <typename... Ix>
  double operator()(Ix... ix) const {
    const Index idx[] = {static_cast<Index>(ix)...};
    return values_[flat_offset(idx, sizeof...(Ix))];
  }
  template <typename... Ix>
  double& operator()(Ix... ix) {
    const Index idx[] = {static_cast<Index>(ix)...};
    return values_[flat_offset(idx, sizeof...(Ix))];
  }

  double frobenius_norm() const { return values_.norm(); }
  bool all_finite() const { return values_.allFinite(); }

 private:
  Index flat_offset(const Index* idx, std::size_t n) const;

  std::vector<Index> dims_;
  Vector values_;
};

/// Largest tensor order the library supports.
inline constexpr Index kMaxOrder = 8;

/// Element count implied by an extent list; throws std::invalid_argument on
/// an order outside [2, kMaxOrder], non-positive extents, or overflow.
Index extent_product(const std::vector<Index>& dims);

/// Standard mode-k unfolding (mode is 0-based): shape d_k x prod_{j!=k} d_j,
/// with the remaining indices linearized first-mode-fastest.
Matrix mode_unfold(const DenseTensor& t, Index mode);

/// Exact inverse of mode_unfold; throws on shape mismatch.
DenseTensor mode_fold(const Matrix& m, Index mode, const std::vector<Index>& dims);

/// Split unfolding after the leading `split` modes, split in [1, K-1]:
/// shape (d_0 ... d_{split-1}) x (d_split ... d_{K-1}). For column-major
/// storage this is a reshape without data movement.
Matrix tt_unfold(const DenseTensor& t, Index split);

/// Exact inverse of tt_unfold; throws on shape mismatch.
DenseTensor tt_fold(const Matrix& m, Index split, const std::vector<Index>& dims);

/// Mode-k product: replaces extent d_k by m.rows(). Satisfies
/// mode_unfold(result, k) == m * mode_unfold(t, k).
DenseTensor mode_product(const DenseTensor& t, const Matrix& m, Index mode);

/// Applies factors[j] (or their transposes) at every mode j != skip, in
/// ascending mode order. Pass skip = -1 to apply all modes.
DenseTensor mode_product_chain(const DenseTensor& t,
                               const std::vector<Matrix>& factors,
                               bool transpose, Index skip = -1);

/// Kronecker product; the second factor's index varies fastest.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace ttrpca
