#pragma once

#include "ttrpca/tensor.hpp"

#include <vector>

namespace ttrpca {

/// Tensor-train representation: K third-order cores, core k of shape
/// [r_{k-1}, d_k, r_k] with boundary ranks r_0 = r_K = 1.
struct TTFormat {
  std::vector<DenseTensor> cores;

  TTFormat() = default;

  /// Validates the rank chain (adjacent core ranks must match, boundary
  /// ranks must be 1); throws std::invalid_argument otherwise.
  explicit TTFormat(std::vector<DenseTensor> cores_in);

  Index order() const { return static_cast<Index>(cores.size()); }

  /// Mode extents [d_1, ..., d_K].
  std::vector<Index> dims() const;

  /// Internal TT ranks [r_1, ..., r_{K-1}].
  std::vector<Index> ranks() const;
};

/// Contracts the core chain into a dense tensor: entry (i_1, ..., i_K) is
/// the product G^1(:, i_1, :) G^2(:, i_2, :) ... G^K(:, i_K, :).
DenseTensor tt_contract(const TTFormat& tt);

/// Tucker form of a TT tensor: small core plus one orthonormal-column
/// factor per mode, with core x_1 U_1 x_2 ... x_K U_K reproducing the
/// full tensor.
struct TuckerCompressed {
  DenseTensor core;             // dims [R_1, ..., R_K]
  std::vector<Matrix> factors;  // U_k of shape d_k x R_k, orthonormal columns

  std::vector<Index> full_dims() const;
  DenseTensor reconstruct() const;
};

/// Compresses a TT tensor into Tucker form. Per mode: when d_k exceeds
/// r_{k-1} r_k the factor is the left singular matrix of the core's mode-2
/// unfolding and the core is replaced by the remaining SVD product;
/// otherwise the factor is the identity. The compression is lossless up to
/// floating-point error. Singular values below 1e-12 of the largest are
/// dropped when determining R_k.
TuckerCompressed tucker_compress(const TTFormat& tt);

/// TT nuclear norm: sum over splits k of alpha[k-1] times the nuclear norm
/// of tt_unfold(t, k). alpha must have K-1 nonnegative entries.
double ttnn(const DenseTensor& t, const std::vector<double>& alpha);

/// Split-balanced weights: alpha_k proportional to
/// min(d_1...d_k, d_{k+1}...d_K), normalized to sum to one.
std::vector<double> default_alpha(const std::vector<Index>& dims);

}  // namespace ttrpca
