#include "ttrpca/prox.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace ttrpca {

Matrix svt(const Matrix& m, double lambda) {
  if (lambda < 0) throw std::invalid_argument("svt: threshold must be nonnegative");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > lambda) ++rank;
  if (rank == 0) return Matrix::Zero(m.rows(), m.cols());
  return svd.matrixU().leftCols(rank) *
         (sigma.head(rank).array() - lambda).matrix().asDiagonal() *
         svd.matrixV().leftCols(rank).transpose();
}

DenseTensor soft_threshold(const DenseTensor& t, double tau) {
  if (tau < 0) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
  const auto& x = t.values().array();
  return DenseTensor(t.dims(), ((x.abs() - tau).max(0.0) * x.sign()).matrix());
}

Matrix procrustes(const Matrix& m) {
  if (m.rows() < m.cols()) {
    throw std::invalid_argument("procrustes: matrix must have rows >= cols");
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace ttrpca
