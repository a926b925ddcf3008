#pragma once

#include "ttrpca/solver.hpp"
#include "ttrpca/synthetic.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ttrpca {

enum class SolverKind { fttnn, ttnn };

const char* to_string(SolverKind kind);
SolverKind parse_solver(const std::string& name);  // throws on unknown name

/// Averaged outcome of repeated trials of one solver on one problem spec.
struct TrialResult {
  SolverKind solver = SolverKind::fttnn;
  double rse_x = 0.0;
  double rse_s = 0.0;
  double iters = 0.0;
  double wall_time_s = 0.0;
  int trials_ok = 0;
  int trials_failed = 0;
};

struct BenchOptions {
  int repeats = 1;
  int threads = 1;  // trials run concurrently when > 1
};

/// Seed for trial `index` derived from the base seed; serial and parallel
/// runs use the same derivation so they agree exactly.
std::uint64_t trial_seed(std::uint64_t base, int index);

/// Runs every selected solver on the same generated instance(s) and averages
/// RSE, iteration count and wall time over the repeats. A trial that throws
/// is counted in trials_failed and excluded from the averages. Fields of
/// `base` left at their "unset" values are filled per instance: empty alpha
/// from default_alpha, non-positive tau from default_tau, empty rank from
/// scaled_rank with the spec's rank_scale.
std::vector<TrialResult> run_benchmark(const SyntheticSpec& spec,
                                       const SolverConfig& base,
                                       const std::vector<SolverKind>& solvers,
                                       const BenchOptions& opts = {});

/// One CSV row of benchmark output.
struct BenchRow {
  std::string solver;
  Index d = 0;
  Index r = 0;
  double nr = 0.0;
  double q = 0.0;
  double rse_x = 0.0;
  double rse_s = 0.0;
  double iters = 0.0;
  double wall_time_s = 0.0;
};

BenchRow make_row(const SyntheticSpec& spec, const TrialResult& result);

/// Reruns the benchmark for every rank scale in qs (same seed, so the same
/// instances) and collects one row per solver per q.
std::vector<BenchRow> rank_sweep(const SyntheticSpec& spec,
                                 const std::vector<double>& qs,
                                 const SolverConfig& base,
                                 const std::vector<SolverKind>& solvers,
                                 const BenchOptions& opts = {});

/// Header plus one line per row:
/// solver,d,r,nr,q,rse_x,rse_s,iters,wall_time_s
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace ttrpca
