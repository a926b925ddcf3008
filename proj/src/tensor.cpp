#include "ttrpca/tensor.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>

namespace ttrpca {

Index extent_product(const std::vector<Index>& dims) {
  const auto order = static_cast<Index>(dims.size());
  if (order < 2 || order > kMaxOrder) {
    throw std::invalid_argument("tensor order must be in [2, " +
                                std::to_string(kMaxOrder) + "], got " +
                                std::to_string(order));
  }
  Index total = 1;
  for (Index d : dims) {
    if (d < 1) throw std::invalid_argument("tensor extents must be positive");
    if (total > std::numeric_limits<Index>::max() / d / 8) {
      throw std::invalid_argument("tensor extent product overflows");
    }
    total *= d;
  }
  return total;
}

DenseTensor::DenseTensor(std::vector<Index> dims)
    : dims_(std::move(dims)), values_(Vector::Zero(extent_product(dims_))) {}

DenseTensor::DenseTensor(std::vector<Index> dims, Vector values)
    : dims_(std::move(dims)), values_(std::move(values)) {
  if (values_.size() != extent_product(dims_)) {
    throw std::invalid_argument("tensor data length does not match extents");
  }
}

Index DenseTensor::flat_offset(const Index* idx, std::size_t n) const {
  assert(static_cast<Index>(n) == order());
  Index flat = 0;
  Index stride = 1;
  for (std::size_t k = 0; k < n; ++k) {
    assert(idx[k] >= 0 && idx[k] < dims_[k]);
    flat += idx[k] * stride;
    stride *= dims_[k];
  }
  return flat;
}

namespace {

// Extents before and after the given mode; the flat offset of entry
// (p, i, s) in the (prefix, d_k, suffix) view is p + prefix*(i + d_k*s).
struct ModeSplit {
  Index prefix = 1;
  Index suffix = 1;
};

ModeSplit split_at(const std::vector<Index>& dims, Index mode) {
  ModeSplit s;
  for (Index j = 0; j < mode; ++j) s.prefix *= dims[static_cast<std::size_t>(j)];
  for (Index j = mode + 1; j < static_cast<Index>(dims.size()); ++j) {
    s.suffix *= dims[static_cast<std::size_t>(j)];
  }
  return s;
}

void check_mode(const std::vector<Index>& dims, Index mode) {
  if (mode < 0 || mode >= static_cast<Index>(dims.size())) {
    throw std::invalid_argument("mode index " + std::to_string(mode) +
                                " out of range for order " +
                                std::to_string(dims.size()));
  }
}

void check_split(const std::vector<Index>& dims, Index split) {
  if (split < 1 || split >= static_cast<Index>(dims.size())) {
    throw std::invalid_argument("split index " + std::to_string(split) +
                                " out of range for order " +
                                std::to_string(dims.size()));
  }
}

}  // namespace

Matrix mode_unfold(const DenseTensor& t, Index mode) {
  check_mode(t.dims(), mode);
  const auto [prefix, suffix] = split_at(t.dims(), mode);
  const Index dk = t.dim(mode);
  Matrix out(dk, prefix * suffix);
  const double* src = t.data();
  for (Index s = 0; s < suffix; ++s) {
    for (Index i = 0; i < dk; ++i) {
      const double* row = src + prefix * (i + dk * s);
      for (Index p = 0; p < prefix; ++p) {
        out(i, s * prefix + p) = row[p];
      }
    }
  }
  return out;
}

DenseTensor mode_fold(const Matrix& m, Index mode, const std::vector<Index>& dims) {
  extent_product(dims);
  check_mode(dims, mode);
  const auto [prefix, suffix] = split_at(dims, mode);
  const Index dk = dims[static_cast<std::size_t>(mode)];
  if (m.rows() != dk || m.cols() != prefix * suffix) {
    throw std::invalid_argument("mode_fold: matrix shape does not match extents");
  }
  DenseTensor out(dims);
  double* dst = out.data();
  for (Index s = 0; s < suffix; ++s) {
    for (Index i = 0; i < dk; ++i) {
      double* row = dst + prefix * (i + dk * s);
      for (Index p = 0; p < prefix; ++p) {
        row[p] = m(i, s * prefix + p);
      }
    }
  }
  return out;
}

Matrix tt_unfold(const DenseTensor& t, Index split) {
  check_split(t.dims(), split);
  Index rows = 1;
  for (Index j = 0; j < split; ++j) rows *= t.dim(j);
  const Index cols = t.size() / rows;
  return Eigen::Map<const Matrix>(t.data(), rows, cols);
}

DenseTensor tt_fold(const Matrix& m, Index split, const std::vector<Index>& dims) {
  const Index total = extent_product(dims);
  check_split(dims, split);
  Index rows = 1;
  for (Index j = 0; j < split; ++j) rows *= dims[static_cast<std::size_t>(j)];
  if (m.rows() != rows || m.rows() * m.cols() != total) {
    throw std::invalid_argument("tt_fold: matrix shape does not match extents");
  }
  return DenseTensor(dims, Eigen::Map<const Vector>(m.data(), m.size()));
}

DenseTensor mode_product(const DenseTensor& t, const Matrix& m, Index mode) {
  check_mode(t.dims(), mode);
  if (m.cols() != t.dim(mode)) {
    throw std::invalid_argument("mode_product: inner dimensions do not match");
  }
  std::vector<Index> out_dims = t.dims();
  out_dims[static_cast<std::size_t>(mode)] = m.rows();
  return mode_fold(m * mode_unfold(t, mode), mode, out_dims);
}

DenseTensor mode_product_chain(const DenseTensor& t,
                               const std::vector<Matrix>& factors,
                               bool transpose, Index skip) {
  if (static_cast<Index>(factors.size()) != t.order()) {
    throw std::invalid_argument("mode_product_chain: one factor per mode required");
  }
  DenseTensor out = t;
  for (Index k = 0; k < t.order(); ++k) {
    if (k == skip) continue;
    const Matrix& u = factors[static_cast<std::size_t>(k)];
    out = transpose ? mode_product(out, u.transpose(), k)
                    : mode_product(out, u, k);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace ttrpca
