#pragma once

#include "ttrpca/tensor.hpp"

namespace ttrpca {

/// Singular value thresholding: with thin SVD m = A diag(s) B^T, returns
/// A diag(max(s - lambda, 0)) B^T, the proximal operator of
/// lambda * nuclear norm at m.
Matrix svt(const Matrix& m, double lambda);

/// Elementwise soft shrinkage sign(x) * max(|x| - tau, 0), the proximal
/// operator of tau * l1 norm.
DenseTensor soft_threshold(const DenseTensor& t, double tau);

/// Nearest orthonormal-column matrix: with thin SVD m = A diag(s) B^T
/// (m of shape d x R, d >= R), returns A B^T, the maximizer of <U, m>
/// over matrices with orthonormal columns.
Matrix procrustes(const Matrix& m);

}  // namespace ttrpca
