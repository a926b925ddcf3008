#include "ttrpca/solver.hpp"

#include "ttrpca/prox.hpp"
#include "ttrpca/tt.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ttrpca {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Relative change between successive iterates; falls back to the absolute
// change when the previous iterate is zero.
double rel_change(const Vector& next, const Vector& prev) {
  const double base = prev.norm();
  const double diff = (next - prev).norm();
  return base > 0.0 ? diff / base : diff;
}

void check_config(const DenseTensor& y, const SolverConfig& cfg, bool needs_rank) {
  if (!y.all_finite()) {
    throw std::invalid_argument("solver: observed tensor has non-finite entries");
  }
  const Index order = y.order();
  if (static_cast<Index>(cfg.alpha.size()) != order - 1) {
    throw std::invalid_argument("solver: alpha must have K-1 entries");
  }
  for (double a : cfg.alpha) {
    if (!(a >= 0)) throw std::invalid_argument("solver: alpha entries must be nonnegative");
  }
  if (!(cfg.tau > 0)) throw std::invalid_argument("solver: tau must be positive");
  if (!(cfg.mu0 >= 0) || !(cfg.mu_max > 0) || !(cfg.rho > 0) || !(cfg.tol > 0)) {
    throw std::invalid_argument("solver: penalty schedule parameters must be positive");
  }
  if (cfg.max_iters < 1) throw std::invalid_argument("solver: max_iters must be positive");
  if (needs_rank) {
    if (static_cast<Index>(cfg.rank.size()) != order) {
      throw std::invalid_argument("solver: rank must have one entry per mode");
    }
    for (Index k = 0; k < order; ++k) {
      const Index r = cfg.rank[static_cast<std::size_t>(k)];
      if (r < 1 || r > y.dim(k)) {
        throw std::invalid_argument("solver: rank entries must lie in [1, d_k]");
      }
    }
  }
}

// Leading left singular vectors of the mode-k unfolding of the data. Warm
// factor starts make the first Tucker term resemble the observation; a cold
// random start leaks observation mass into the sparse block during the
// first iterations and the growing penalty never lets it back out.
std::vector<Matrix> hosvd_factors(const DenseTensor& y, const std::vector<Index>& rank) {
  std::vector<Matrix> factors(static_cast<std::size_t>(y.order()));
  for (Index k = 0; k < y.order(); ++k) {
    Eigen::BDCSVD<Matrix> svd(mode_unfold(y, k), Eigen::ComputeThinU);
    factors[static_cast<std::size_t>(k)] =
        svd.matrixU().leftCols(rank[static_cast<std::size_t>(k)]);
  }
  return factors;
}

// Start the penalty where the first soft-shrinkage threshold tau/mu equals
// the RMS entry of the data. This keeps the schedule scale-free: a fixed
// mu0 starts the thresholds far above the corruption scale on small or
// rescaled problems, and mass that leaks into the wrong block during those
// early iterations is never recovered once the penalty has grown.
double initial_mu(const DenseTensor& y, const SolverConfig& cfg) {
  if (cfg.mu0 > 0) return std::min(cfg.mu0, cfg.mu_max);
  const double rms = y.frobenius_norm() / std::sqrt(static_cast<double>(y.size()));
  return std::min(cfg.tau / rms, cfg.mu_max);
}

DecomposeResult trivial_zero_result(const DenseTensor& y, const SolverConfig& cfg,
                                    bool with_core, Clock::time_point start) {
  DecomposeResult out;
  out.x = DenseTensor(y.dims());
  out.s = DenseTensor(y.dims());
  if (with_core) {
    out.x_core = DenseTensor(cfg.rank);
    out.factors.reserve(cfg.rank.size());
    for (Index k = 0; k < y.order(); ++k) {
      out.factors.push_back(
          Matrix::Identity(y.dim(k), cfg.rank[static_cast<std::size_t>(k)]));
    }
  }
  out.report.iters = 1;
  out.report.converged = true;
  out.report.rel_change_x = {0.0};
  out.report.rel_change_s = {0.0};
  out.report.wall_time_s = seconds_since(start);
  return out;
}

}  // namespace

double default_tau(const std::vector<Index>& dims) {
  const Index total = extent_product(dims);
  const auto order = static_cast<Index>(dims.size());
  double sum = 0.0;
  Index left = 1;
  for (Index k = 1; k < order; ++k) {
    left *= dims[static_cast<std::size_t>(k - 1)];
    sum += 1.0 / std::sqrt(static_cast<double>(std::max(left, total / left)));
  }
  return sum / static_cast<double>(order - 1);
}

DecomposeResult fttnn_solve(const DenseTensor& y, const SolverConfig& cfg) {
  check_config(y, cfg, /*needs_rank=*/true);
  const auto start = Clock::now();
  const Index order = y.order();
  const auto& dims = y.dims();
  const auto splits = static_cast<std::size_t>(order - 1);

  // A zero observation decomposes trivially; the Gaussian initialization
  // below would otherwise inject noise that takes many iterations to decay.
  if (y.frobenius_norm() == 0.0) {
    return trivial_zero_result(y, cfg, /*with_core=*/true, start);
  }

  std::vector<Matrix> factors = hosvd_factors(y, cfg.rank);
  DenseTensor core = mode_product_chain(y, factors, /*transpose=*/true);

  std::vector<DenseTensor> aux(splits, core);            // nuclear-norm blocks M^k
  std::vector<DenseTensor> aux_dual(splits, DenseTensor(cfg.rank));  // Q^k
  DenseTensor x = y;
  DenseTensor s(dims);
  DenseTensor sum_dual(dims);      // multiplier for y = x + s
  DenseTensor tucker_dual(dims);   // multiplier for x = Tucker(core)
  double mu = initial_mu(y, cfg);

  SolveReport report;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    // Nuclear-norm blocks: SVT on the split unfoldings of the small core.
    for (std::size_t k = 0; k < splits; ++k) {
      const auto split = static_cast<Index>(k + 1);
      const Matrix w =
          tt_unfold(core, split) - tt_unfold(aux_dual[k], split) / mu;
      aux[k] = tt_fold(svt(w, cfg.alpha[k] / mu), split, cfg.rank);
    }

    // x block: exact minimizer of the two quadratic couplings.
    const DenseTensor tucker = mode_product_chain(core, factors, false);
    DenseTensor x_next(dims,
                       0.5 * ((y.values() - s.values() + sum_dual.values() / mu) +
                              (tucker.values() - tucker_dual.values() / mu)));

    // Sparse block.
    DenseTensor s_next = soft_threshold(
        DenseTensor(dims, y.values() - x_next.values() + sum_dual.values() / mu),
        cfg.tau / mu);

    // Core block: average of the projected full-size iterate and the
    // nuclear-norm blocks (stationary point under orthonormal factors).
    const DenseTensor projected = mode_product_chain(
        DenseTensor(dims, mu * x_next.values() + tucker_dual.values()), factors,
        true);
    Vector core_acc = projected.values();
    for (std::size_t k = 0; k < splits; ++k) {
      core_acc += mu * aux[k].values() + aux_dual[k].values();
    }
    core = DenseTensor(cfg.rank, core_acc / (static_cast<double>(order) * mu));

    // Factor blocks, Gauss-Seidel in mode order: each factor maximizes the
    // inner product between the projected data and the core expansion.
    const DenseTensor base(dims, x_next.values() + tucker_dual.values() / mu);
    for (Index k = 0; k < order; ++k) {
      const DenseTensor partial = mode_product_chain(base, factors, true, k);
      factors[static_cast<std::size_t>(k)] =
          procrustes(mode_unfold(partial, k) * mode_unfold(core, k).transpose());
    }

    // Dual ascent.
    for (std::size_t k = 0; k < splits; ++k) {
      aux_dual[k].values() += mu * (aux[k].values() - core.values());
    }
    const DenseTensor tucker_next = mode_product_chain(core, factors, false);
    tucker_dual.values() += mu * (x_next.values() - tucker_next.values());
    sum_dual.values() += mu * (y.values() - x_next.values() - s_next.values());
    mu = std::min(cfg.rho * mu, cfg.mu_max);

    const double dx = rel_change(x_next.values(), x.values());
    const double ds = rel_change(s_next.values(), s.values());
    report.rel_change_x.push_back(dx);
    report.rel_change_s.push_back(ds);
    report.iters = iter;
    x = std::move(x_next);
    s = std::move(s_next);
    if (std::max(dx, ds) <= cfg.tol) {
      report.converged = true;
      break;
    }
  }

  report.wall_time_s = seconds_since(start);
  DecomposeResult out;
  out.x = std::move(x);
  out.s = std::move(s);
  out.x_core = std::move(core);
  out.factors = std::move(factors);
  out.report = std::move(report);
  return out;
}

DecomposeResult ttnn_solve(const DenseTensor& y, const SolverConfig& cfg) {
  check_config(y, cfg, /*needs_rank=*/false);
  const auto start = Clock::now();
  const Index order = y.order();
  const auto& dims = y.dims();
  const auto splits = static_cast<std::size_t>(order - 1);

  DenseTensor x = y;
  DenseTensor s(dims);
  std::vector<DenseTensor> aux(splits, DenseTensor(dims));       // M^k
  std::vector<DenseTensor> aux_dual(splits, DenseTensor(dims));  // Q^k
  DenseTensor sum_dual(dims);
  double mu = initial_mu(y, cfg);

  SolveReport report;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    // Full-size SVTs; this is the cost the compressed solver avoids.
    for (std::size_t k = 0; k < splits; ++k) {
      const auto split = static_cast<Index>(k + 1);
      const Matrix w = tt_unfold(x, split) - tt_unfold(aux_dual[k], split) / mu;
      aux[k] = tt_fold(svt(w, cfg.alpha[k] / mu), split, dims);
    }

    Vector x_acc = y.values() - s.values() + sum_dual.values() / mu;
    for (std::size_t k = 0; k < splits; ++k) {
      x_acc += aux[k].values() + aux_dual[k].values() / mu;
    }
    DenseTensor x_next(dims, x_acc / static_cast<double>(order));

    DenseTensor s_next = soft_threshold(
        DenseTensor(dims, y.values() - x_next.values() + sum_dual.values() / mu),
        cfg.tau / mu);

    for (std::size_t k = 0; k < splits; ++k) {
      aux_dual[k].values() += mu * (aux[k].values() - x_next.values());
    }
    sum_dual.values() += mu * (y.values() - x_next.values() - s_next.values());
    mu = std::min(cfg.rho * mu, cfg.mu_max);

    const double dx = rel_change(x_next.values(), x.values());
    const double ds = rel_change(s_next.values(), s.values());
    report.rel_change_x.push_back(dx);
    report.rel_change_s.push_back(ds);
    report.iters = iter;
    x = std::move(x_next);
    s = std::move(s_next);
    if (std::max(dx, ds) <= cfg.tol) {
      report.converged = true;
      break;
    }
  }

  report.wall_time_s = seconds_since(start);
  DecomposeResult out;
  out.x = std::move(x);
  out.s = std::move(s);
  out.report = std::move(report);
  return out;
}

}  // namespace ttrpca
