#pragma once

#include "ttrpca/tensor.hpp"

#include <cstdint>
#include <vector>

namespace ttrpca {

/// Parameters shared by both ADMM solvers. tau and alpha have no universal
/// default; fill them from default_tau / default_alpha or set them
/// explicitly. rank is the per-mode core size and is used by fttnn_solve
/// only.
///
/// mu0 = 0 selects the scale-aware start mu0 = tau / rms(y), which puts the
/// first shrinkage threshold at the root-mean-square entry of the data. A
/// fixed mu0 is honored as given but couples the schedule to the data
/// scale.
struct SolverConfig {
  double tau = 0.0;                // sparsity weight, must be positive
  std::vector<double> alpha;       // K-1 nonnegative split weights
  double mu0 = 0.0;                // initial penalty; 0 = tau / rms(y)
  double mu_max = 1e10;            // penalty cap
  double rho = 1.1;                // penalty growth factor per iteration
  double tol = 1e-8;               // stop when max relative change <= tol
  int max_iters = 500;
  std::vector<Index> rank;         // core extents [R_1, ..., R_K]
  std::uint64_t seed = 0;          // initialization seed
};

struct SolveReport {
  int iters = 0;
  bool converged = false;
  std::vector<double> rel_change_x;  // one entry per iteration
  std::vector<double> rel_change_s;
  double wall_time_s = 0.0;
};

struct DecomposeResult {
  DenseTensor x;  // low-rank estimate
  DenseTensor s;  // sparse estimate
  SolveReport report;

  // Compressed representation of x (fttnn_solve only; empty for the
  // uncompressed solver): x ~= x_core x_1 factors[0] ... x_K factors[K-1].
  DenseTensor x_core;
  std::vector<Matrix> factors;
};

/// Decomposes y into a low-TT-rank and a sparse component by ADMM on the
/// compressed formulation: the nuclear-norm blocks act on unfoldings of a
/// small core tensor of extents cfg.rank, coupled to the full-size iterate
/// through orthonormal factor matrices updated by Procrustes projections.
DecomposeResult fttnn_solve(const DenseTensor& y, const SolverConfig& cfg);

/// Baseline ADMM on the uncompressed formulation: the nuclear-norm blocks
/// act directly on the split unfoldings of the full-size iterate. Ignores
/// cfg.rank.
DecomposeResult ttnn_solve(const DenseTensor& y, const SolverConfig& cfg);

/// Default sparsity weight: the average over splits k of
/// 1 / sqrt(max(d_1...d_k, d_{k+1}...d_K)).
double default_tau(const std::vector<Index>& dims);

}  // namespace ttrpca
