#include "ttrpca/synthetic.hpp"

#include "ttrpca/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace ttrpca {

namespace {

void check_spec(const SyntheticSpec& spec) {
  const auto order = static_cast<Index>(spec.dims.size());
  extent_product(spec.dims);
  if (static_cast<Index>(spec.tt_rank.size()) != order - 1) {
    throw std::invalid_argument("gen_synthetic: tt_rank must have K-1 entries");
  }
  for (Index r : spec.tt_rank) {
    if (r < 1) throw std::invalid_argument("gen_synthetic: tt_rank entries must be >= 1");
  }
  if (!(spec.noise_ratio >= 0.0) || spec.noise_ratio >= 1.0) {
    throw std::invalid_argument("gen_synthetic: noise_ratio must lie in [0, 1)");
  }
  if (!(spec.rank_scale > 0.0)) {
    throw std::invalid_argument("gen_synthetic: rank_scale must be positive");
  }
}

}  // namespace

SyntheticInstance gen_synthetic(const SyntheticSpec& spec) {
  check_spec(spec);
  const auto order = static_cast<Index>(spec.dims.size());
  Rng rng(spec.seed);

  // Planted low-rank component from Gaussian cores.
  std::vector<DenseTensor> cores;
  cores.reserve(static_cast<std::size_t>(order));
  for (Index k = 0; k < order; ++k) {
    const Index rl = k == 0 ? 1 : spec.tt_rank[static_cast<std::size_t>(k - 1)];
    const Index rr = k == order - 1 ? 1 : spec.tt_rank[static_cast<std::size_t>(k)];
    const Index dk = spec.dims[static_cast<std::size_t>(k)];
    Vector v(rl * dk * rr);
    for (Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
    cores.emplace_back(std::vector<Index>{rl, dk, rr}, std::move(v));
  }

  SyntheticInstance out;
  out.x0 = tt_contract(TTFormat(std::move(cores)));
  out.s0 = DenseTensor(spec.dims);

  const Index total = out.x0.size();
  const auto count =
      static_cast<Index>(std::llround(spec.noise_ratio * static_cast<double>(total)));
  if (count > 0) {
    // Partial Fisher-Yates: the first `count` slots are a uniform sample
    // without replacement.
    std::vector<Index> pool(static_cast<std::size_t>(total));
    std::iota(pool.begin(), pool.end(), Index{0});
    out.support.reserve(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) {
      const auto j =
          i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(total - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
      const Index entry = pool[static_cast<std::size_t>(i)];
      out.s0[entry] = rng.sign();
      out.support.push_back(entry);
    }
    std::sort(out.support.begin(), out.support.end());
  }

  out.y = DenseTensor(spec.dims, out.x0.values() + out.s0.values());
  return out;
}

double rse(const DenseTensor& estimate, const DenseTensor& truth) {
  if (estimate.dims() != truth.dims()) {
    throw std::invalid_argument("rse: extents do not match");
  }
  const double base = truth.frobenius_norm();
  if (base == 0.0) throw std::invalid_argument("rse: truth tensor has zero norm");
  return (estimate.values() - truth.values()).norm() / base;
}

std::vector<Index> scaled_rank(const std::vector<Index>& dims,
                               const std::vector<Index>& tt_rank, double q) {
  const auto order = static_cast<Index>(dims.size());
  extent_product(dims);
  if (static_cast<Index>(tt_rank.size()) != order - 1) {
    throw std::invalid_argument("scaled_rank: tt_rank must have K-1 entries");
  }
  if (!(q > 0)) throw std::invalid_argument("scaled_rank: q must be positive");
  std::vector<Index> rank(static_cast<std::size_t>(order));
  for (Index k = 0; k < order; ++k) {
    const Index rl = k == 0 ? 1 : tt_rank[static_cast<std::size_t>(k - 1)];
    const Index rr = k == order - 1 ? 1 : tt_rank[static_cast<std::size_t>(k)];
    const auto scaled = static_cast<Index>(std::llround(q * static_cast<double>(rl * rr)));
    rank[static_cast<std::size_t>(k)] =
        std::clamp(scaled, Index{1}, dims[static_cast<std::size_t>(k)]);
  }
  return rank;
}

}  // namespace ttrpca
