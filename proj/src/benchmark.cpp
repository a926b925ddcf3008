#include "ttrpca/benchmark.hpp"

#include "ttrpca/rng.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace ttrpca {

const char* to_string(SolverKind kind) {
  return kind == SolverKind::fttnn ? "fttnn" : "ttnn";
}

SolverKind parse_solver(const std::string& name) {
  if (name == "fttnn") return SolverKind::fttnn;
  if (name == "ttnn") return SolverKind::ttnn;
  throw std::invalid_argument("unknown solver '" + name + "' (expected fttnn or ttnn)");
}

std::uint64_t trial_seed(std::uint64_t base, int index) {
  return splitmix64(base + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
}

namespace {

struct TrialOutcome {
  bool ok = false;
  double rse_x = 0.0;
  double rse_s = 0.0;
  double iters = 0.0;
  double wall = 0.0;
};

SolverConfig effective_config(const SyntheticSpec& spec, const SolverConfig& base,
                              SolverKind kind, std::uint64_t seed) {
  SolverConfig cfg = base;
  if (cfg.alpha.empty()) cfg.alpha = default_alpha(spec.dims);
  if (!(cfg.tau > 0)) cfg.tau = default_tau(spec.dims);
  if (kind == SolverKind::fttnn && cfg.rank.empty()) {
    cfg.rank = scaled_rank(spec.dims, spec.tt_rank, spec.rank_scale);
  }
  cfg.seed = seed;
  return cfg;
}

TrialOutcome run_one(const SyntheticInstance& inst, const SyntheticSpec& spec,
                     const SolverConfig& base, SolverKind kind,
                     std::uint64_t solver_seed) {
  TrialOutcome out;
  try {
    const SolverConfig cfg = effective_config(spec, base, kind, solver_seed);
    const DecomposeResult res = kind == SolverKind::fttnn
                                    ? fttnn_solve(inst.y, cfg)
                                    : ttnn_solve(inst.y, cfg);
    out.rse_x = rse(res.x, inst.x0);
    out.rse_s = inst.s0.frobenius_norm() > 0
                    ? rse(res.s, inst.s0)
                    : res.s.frobenius_norm();
    out.iters = static_cast<double>(res.report.iters);
    out.wall = res.report.wall_time_s;
    out.ok = true;
  } catch (const std::exception&) {
    out.ok = false;
  }
  return out;
}

}  // namespace

std::vector<TrialResult> run_benchmark(const SyntheticSpec& spec,
                                       const SolverConfig& base,
                                       const std::vector<SolverKind>& solvers,
                                       const BenchOptions& opts) {
  if (solvers.empty()) throw std::invalid_argument("run_benchmark: no solvers selected");
  if (opts.repeats < 1) throw std::invalid_argument("run_benchmark: repeats must be >= 1");

  // outcomes[t][s]: trial t, solver s. Trials are independent; the solver
  // pair within one trial runs sequentially so paired timings stay fair.
  std::vector<std::vector<TrialOutcome>> outcomes(
      static_cast<std::size_t>(opts.repeats),
      std::vector<TrialOutcome>(solvers.size()));

  auto run_trial = [&](int t) {
    const std::uint64_t tseed = trial_seed(spec.seed, t);
    SyntheticSpec trial_spec = spec;
    trial_spec.seed = tseed;
    const SyntheticInstance inst = gen_synthetic(trial_spec);
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      const std::uint64_t solver_seed = splitmix64(tseed ^ (0x51ULL + s));
      outcomes[static_cast<std::size_t>(t)][s] =
          run_one(inst, spec, base, solvers[s], solver_seed);
    }
  };

  const int workers = std::min(opts.threads, opts.repeats);
  if (workers <= 1) {
    for (int t = 0; t < opts.repeats; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int t = next.fetch_add(1); t < opts.repeats; t = next.fetch_add(1)) {
          run_trial(t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<TrialResult> results;
  results.reserve(solvers.size());
  for (std::size_t s = 0; s < solvers.size(); ++s) {
    TrialResult r;
    r.solver = solvers[s];
    for (int t = 0; t < opts.repeats; ++t) {
      const TrialOutcome& o = outcomes[static_cast<std::size_t>(t)][s];
      if (!o.ok) {
        ++r.trials_failed;
        continue;
      }
      ++r.trials_ok;
      r.rse_x += o.rse_x;
      r.rse_s += o.rse_s;
      r.iters += o.iters;
      r.wall_time_s += o.wall;
    }
    if (r.trials_ok > 0) {
      const double n = r.trials_ok;
      r.rse_x /= n;
      r.rse_s /= n;
      r.iters /= n;
      r.wall_time_s /= n;
    } else {
      r.rse_x = r.rse_s = std::nan("");
    }
    results.push_back(std::move(r));
  }
  return results;
}

BenchRow make_row(const SyntheticSpec& spec, const TrialResult& result) {
  BenchRow row;
  row.solver = to_string(result.solver);
  row.d = spec.dims.front();
  row.r = spec.tt_rank.front();
  row.nr = spec.noise_ratio;
  row.q = spec.rank_scale;
  row.rse_x = result.rse_x;
  row.rse_s = result.rse_s;
  row.iters = result.iters;
  row.wall_time_s = result.wall_time_s;
  return row;
}

std::vector<BenchRow> rank_sweep(const SyntheticSpec& spec,
                                 const std::vector<double>& qs,
                                 const SolverConfig& base,
                                 const std::vector<SolverKind>& solvers,
                                 const BenchOptions& opts) {
  if (qs.empty()) throw std::invalid_argument("rank_sweep: need at least one q");
  std::vector<BenchRow> rows;
  rows.reserve(qs.size() * solvers.size());
  for (double q : qs) {
    SyntheticSpec swept = spec;
    swept.rank_scale = q;
    for (const TrialResult& r : run_benchmark(swept, base, solvers, opts)) {
      rows.push_back(make_row(swept, r));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "solver,d,r,nr,q,rse_x,rse_s,iters,wall_time_s\n";
  char line[256];
  for (const BenchRow& row : rows) {
    std::snprintf(line, sizeof line, "%s,%lld,%lld,%g,%g,%.9e,%.9e,%g,%.6g\n",
                  row.solver.c_str(), static_cast<long long>(row.d),
                  static_cast<long long>(row.r), row.nr, row.q, row.rse_x,
                  row.rse_s, row.iters, row.wall_time_s);
    out << line;
  }
}

}  // namespace ttrpca
