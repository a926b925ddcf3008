#pragma once

#include "ttrpca/tensor.hpp"
#include "ttrpca/tt.hpp"

#include <cstdint>
#include <vector>

namespace ttrpca {

/// Synthetic problem description: a planted low-TT-rank tensor plus sparse
/// corruption on a uniformly sampled support.
struct SyntheticSpec {
  std::vector<Index> dims;
  std::vector<Index> tt_rank;  // K-1 internal ranks of the planted tensor
  double noise_ratio = 0.0;    // fraction of corrupted entries, in [0, 1)
  double rank_scale = 1.2;     // q, scales the solver's given rank
  std::uint64_t seed = 0;
};

struct SyntheticInstance {
  DenseTensor y;   // observed = x0 + s0
  DenseTensor x0;  // planted low-rank component
  DenseTensor s0;  // planted sparse component
  std::vector<Index> support;  // sorted flat offsets of the corrupted entries
};

/// Draws Gaussian TT cores with the requested ranks, contracts them into
/// x0, corrupts round(noise_ratio * numel) uniformly chosen entries with
/// +-1 values, and returns y = x0 + s0. Deterministic given the seed.
SyntheticInstance gen_synthetic(const SyntheticSpec& spec);

/// Relative error |estimate - truth|_F / |truth|_F; throws on mismatched
/// extents or zero-norm truth.
double rse(const DenseTensor& estimate, const DenseTensor& truth);

/// Given rank from the rank-scale recipe: R_k = round(q * r_{k-1} * r_k)
/// with boundary ranks 1, clamped to [1, d_k].
std::vector<Index> scaled_rank(const std::vector<Index>& dims,
                               const std::vector<Index>& tt_rank, double q);

}  // namespace ttrpca
