#include "ttrpca/tt.hpp"

#include <Eigen/SVD>

#include <stdexcept>
#include <string>
#include <utility>

namespace ttrpca {

namespace {
constexpr double kRankCutoff = 1e-12;  // relative singular-value cutoff
}

TTFormat::TTFormat(std::vector<DenseTensor> cores_in) : cores(std::move(cores_in)) {
  const auto count = static_cast<Index>(cores.size());
  if (count < 2) throw std::invalid_argument("TTFormat: need at least two cores");
  for (const auto& c : cores) {
    if (c.order() != 3) throw std::invalid_argument("TTFormat: cores must be third-order");
  }
  if (cores.front().dim(0) != 1 || cores.back().dim(2) != 1) {
    throw std::invalid_argument("TTFormat: boundary ranks must be 1");
  }
  for (Index k = 0; k + 1 < count; ++k) {
    if (cores[static_cast<std::size_t>(k)].dim(2) !=
        cores[static_cast<std::size_t>(k + 1)].dim(0)) {
      throw std::invalid_argument("TTFormat: rank chain mismatch between cores " +
                                  std::to_string(k) + " and " + std::to_string(k + 1));
    }
  }
}

std::vector<Index> TTFormat::dims() const {
  std::vector<Index> d;
  d.reserve(cores.size());
  for (const auto& c : cores) d.push_back(c.dim(1));
  return d;
}

std::vector<Index> TTFormat::ranks() const {
  std::vector<Index> r;
  r.reserve(cores.size() - 1);
  for (std::size_t k = 0; k + 1 < cores.size(); ++k) r.push_back(cores[k].dim(2));
  return r;
}

DenseTensor tt_contract(const TTFormat& tt) {
  if (tt.cores.size() < 2) throw std::invalid_argument("tt_contract: invalid TTFormat");
  const auto dims = tt.dims();

  // Left-to-right chain product. The running matrix holds the partial
  // contraction over the leading modes, (d_1...d_k) x r_k, and because
  // storage is column-major the reshape between steps is a plain copy.
  const auto& first = tt.cores.front();
  Matrix acc = Eigen::Map<const Matrix>(first.data(), first.dim(1), first.dim(2));
  Index rows = first.dim(1);
  for (std::size_t k = 1; k < tt.cores.size(); ++k) {
    const auto& core = tt.cores[k];
    const Index rl = core.dim(0), dk = core.dim(1), rr = core.dim(2);
    Eigen::Map<const Matrix> h(core.data(), rl, dk * rr);
    Matrix prod = acc * h;  // rows x (dk * rr)
    rows *= dk;
    acc = Eigen::Map<const Matrix>(prod.data(), rows, rr);
  }
  return DenseTensor(dims, Eigen::Map<const Vector>(acc.data(), acc.size()));
}

std::vector<Index> TuckerCompressed::full_dims() const {
  std::vector<Index> d;
  d.reserve(factors.size());
  for (const auto& u : factors) d.push_back(u.rows());
  return d;
}

DenseTensor TuckerCompressed::reconstruct() const {
  return mode_product_chain(core, factors, /*transpose=*/false);
}

TuckerCompressed tucker_compress(const TTFormat& tt) {
  if (tt.cores.size() < 2) throw std::invalid_argument("tucker_compress: invalid TTFormat");
  const Index order = tt.order();

  std::vector<DenseTensor> compressed;
  compressed.reserve(static_cast<std::size_t>(order));
  std::vector<Matrix> factors(static_cast<std::size_t>(order));

  for (Index k = 0; k < order; ++k) {
    const auto& core = tt.cores[static_cast<std::size_t>(k)];
    const Index rl = core.dim(0), dk = core.dim(1), rr = core.dim(2);
    if (dk > rl * rr) {
      Eigen::BDCSVD<Matrix> svd(mode_unfold(core, 1),
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Vector& sigma = svd.singularValues();
      Index rank = 0;
      while (rank < sigma.size() && sigma[rank] > kRankCutoff * sigma[0]) ++rank;
      if (rank == 0) rank = 1;
      factors[static_cast<std::size_t>(k)] = svd.matrixU().leftCols(rank);
      const Matrix rest = sigma.head(rank).asDiagonal() *
                          svd.matrixV().leftCols(rank).transpose();
      compressed.push_back(mode_fold(rest, 1, {rl, rank, rr}));
    } else {
      factors[static_cast<std::size_t>(k)] = Matrix::Identity(dk, dk);
      compressed.push_back(core);
    }
  }
  return TuckerCompressed{tt_contract(TTFormat(std::move(compressed))),
                          std::move(factors)};
}

double ttnn(const DenseTensor& t, const std::vector<double>& alpha) {
  const Index order = t.order();
  if (static_cast<Index>(alpha.size()) != order - 1) {
    throw std::invalid_argument("ttnn: weight vector must have K-1 entries");
  }
  for (double a : alpha) {
    if (a < 0) throw std::invalid_argument("ttnn: weights must be nonnegative");
  }
  double total = 0.0;
  for (Index k = 1; k < order; ++k) {
    const double weight = alpha[static_cast<std::size_t>(k - 1)];
    if (weight == 0.0) continue;
    Eigen::BDCSVD<Matrix> svd(tt_unfold(t, k));
    total += weight * svd.singularValues().sum();
  }
  return total;
}

std::vector<double> default_alpha(const std::vector<Index>& dims) {
  const Index total = extent_product(dims);
  const auto order = static_cast<Index>(dims.size());
  std::vector<double> delta(static_cast<std::size_t>(order - 1));
  Index left = 1;
  for (Index k = 1; k < order; ++k) {
    left *= dims[static_cast<std::size_t>(k - 1)];
    const Index right = total / left;
    delta[static_cast<std::size_t>(k - 1)] = static_cast<double>(std::min(left, right));
  }
  double sum = 0.0;
  for (double d : delta) sum += d;
  for (double& d : delta) d /= sum;
  return delta;
}

}  // namespace ttrpca
