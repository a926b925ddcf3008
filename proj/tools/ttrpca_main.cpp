// Command-line front end: synthetic instance generation, solving TNSR1
// tensor files, and benchmark tables.
//
// Exit codes: 0 success, 1 runtime/I-O failure, 2 usage error.

#include "ttrpca/benchmark.hpp"
#include "ttrpca/solver.hpp"
#include "ttrpca/synthetic.hpp"
#include "ttrpca/tensor_io.hpp"
#include "ttrpca/tt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ttrpca;

namespace {

struct SynthArgs {
  std::vector<Index> dims;
  std::vector<Index> tt_rank;
  double nr = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string solve_with;
  double q = 1.2;
  std::vector<Index> rank;
  double tau = 0.0;
  std::vector<double> alpha;
  double tol = 1e-8;
  int max_iters = 500;
};

struct SolveArgs {
  std::string input;
  std::string solver = "fttnn";
  std::vector<Index> rank;
  double tau = 0.0;
  std::vector<double> alpha;
  double tol = 1e-8;
  int max_iters = 500;
  std::uint64_t seed = 0;
  std::string out_x;
  std::string out_s;
};

struct BenchArgs {
  std::vector<Index> dims;
  std::vector<Index> tt_rank;
  std::vector<double> nrs{0.05};
  int repeats = 1;
  std::string solvers = "fttnn,ttnn";
  double q = 1.2;
  std::string sweep_q;
  std::uint64_t seed = 0;
  std::string out;
  double tol = 1e-8;
  int max_iters = 500;
  int parallel = 1;
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

// "start:step:stop", inclusive of stop up to rounding.
std::vector<double> parse_sweep(const std::string& text) {
  const auto a = text.find(':');
  const auto b = text.rfind(':');
  if (a == std::string::npos || b == a) {
    throw CLI::ValidationError("--sweep-q", "expected start:step:stop");
  }
  const double start = std::stod(text.substr(0, a));
  const double step = std::stod(text.substr(a + 1, b - a - 1));
  const double stop = std::stod(text.substr(b + 1));
  if (!(step > 0) || stop < start) {
    throw CLI::ValidationError("--sweep-q", "need step > 0 and stop >= start");
  }
  const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> qs(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) qs[static_cast<std::size_t>(i)] = start + i * step;
  return qs;
}

SolverConfig solver_config(const std::vector<Index>& dims, double tau,
                           const std::vector<double>& alpha, double tol,
                           int max_iters, const std::vector<Index>& rank,
                           std::uint64_t seed) {
  SolverConfig cfg;
  cfg.tau = tau > 0 ? tau : default_tau(dims);
  cfg.alpha = alpha.empty() ? default_alpha(dims) : alpha;
  cfg.tol = tol;
  cfg.max_iters = max_iters;
  cfg.rank = rank;
  cfg.seed = seed;
  return cfg;
}

json report_json(const std::string& solver, const SolverConfig& cfg,
                 const SolveReport& report) {
  json j;
  j["solver"] = solver;
  j["iters"] = report.iters;
  j["converged"] = report.converged;
  j["wall_time_s"] = report.wall_time_s;
  j["tau"] = cfg.tau;
  return j;
}

int cmd_synth(const SynthArgs& args) {
  SyntheticSpec spec;
  spec.dims = args.dims;
  spec.tt_rank = args.tt_rank;
  spec.noise_ratio = args.nr;
  spec.rank_scale = args.q;
  spec.seed = args.seed;
  const SyntheticInstance inst = gen_synthetic(spec);

  json j;
  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);
    const auto y_path = (dir / "Y.tnsr").string();
    const auto x_path = (dir / "X0.tnsr").string();
    const auto s_path = (dir / "S0.tnsr").string();
    write_tnsr(y_path, inst.y);
    write_tnsr(x_path, inst.x0);
    write_tnsr(s_path, inst.s0);
    j["y"] = y_path;
    j["x0"] = x_path;
    j["s0"] = s_path;
  }

  if (!args.solve_with.empty()) {
    const SolverKind kind = parse_solver(args.solve_with);
    std::vector<Index> rank = args.rank;
    if (kind == SolverKind::fttnn && rank.empty()) {
      rank = scaled_rank(spec.dims, spec.tt_rank, spec.rank_scale);
    }
    SolverConfig cfg = solver_config(spec.dims, args.tau, args.alpha, args.tol,
                                     args.max_iters, rank, args.seed);
    const DecomposeResult res = kind == SolverKind::fttnn
                                    ? fttnn_solve(inst.y, cfg)
                                    : ttnn_solve(inst.y, cfg);
    j.update(report_json(args.solve_with, cfg, res.report));
    j["rse_x"] = rse(res.x, inst.x0);
    j["rse_s"] = inst.s0.frobenius_norm() > 0 ? rse(res.s, inst.s0)
                                              : res.s.frobenius_norm();
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_solve(const SolveArgs& args) {
  const DenseTensor y = read_tnsr(args.input);
  const SolverKind kind = parse_solver(args.solver);

  std::vector<Index> rank = args.rank;
  if (kind == SolverKind::ttnn && !rank.empty()) {
    std::cerr << "warning: --rank is ignored by the ttnn solver\n";
    rank.clear();
  }
  if (kind == SolverKind::fttnn && rank.empty()) {
    throw CLI::ValidationError("--rank", "the fttnn solver needs a given rank");
  }
  const SolverConfig cfg = solver_config(y.dims(), args.tau, args.alpha,
                                         args.tol, args.max_iters, rank,
                                         args.seed);
  const DecomposeResult res =
      kind == SolverKind::fttnn ? fttnn_solve(y, cfg) : ttnn_solve(y, cfg);

  if (!args.out_x.empty()) write_tnsr(args.out_x, res.x);
  if (!args.out_s.empty()) write_tnsr(args.out_s, res.s);
  std::cout << report_json(args.solver, cfg, res.report).dump() << "\n";
  return 0;
}

int cmd_bench(const BenchArgs& args) {
  std::vector<SolverKind> solvers;
  for (const auto& name : split_commas(args.solvers)) {
    solvers.push_back(parse_solver(name));
  }
  const std::vector<double> qs =
      args.sweep_q.empty() ? std::vector<double>{args.q} : parse_sweep(args.sweep_q);

  SolverConfig base;  // tau/alpha/rank filled per instance by the harness
  base.tol = args.tol;
  base.max_iters = args.max_iters;

  BenchOptions opts;
  opts.repeats = args.repeats;
  opts.threads = args.parallel;

  std::vector<BenchRow> rows;
  for (double nr : args.nrs) {
    SyntheticSpec spec;
    spec.dims = args.dims;
    spec.tt_rank = args.tt_rank;
    spec.noise_ratio = nr;
    spec.seed = args.seed;
    for (const BenchRow& row : rank_sweep(spec, qs, base, solvers, opts)) {
      rows.push_back(row);
    }
  }

  if (args.out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(args.out);
    if (!out) throw std::runtime_error(args.out + ": cannot open for writing");
    write_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor robust PCA: low-TT-rank plus sparse decomposition"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic low-rank plus sparse instance");
  synth_cmd->add_option("--dims", synth.dims, "Tensor extents, e.g. 30,30,30,30")
      ->required()
      ->delimiter(',');
  synth_cmd->add_option("--tt-rank", synth.tt_rank, "Planted TT rank, K-1 entries")
      ->required()
      ->delimiter(',');
  synth_cmd->add_option("--nr", synth.nr, "Fraction of corrupted entries");
  synth_cmd->add_option("--seed", synth.seed, "RNG seed");
  synth_cmd->add_option("--out", synth.out_dir, "Directory for Y/X0/S0 TNSR1 files");
  synth_cmd->add_option("--solve", synth.solve_with, "Solve in place: fttnn or ttnn");
  synth_cmd->add_option("--q", synth.q, "Rank scale for the solver's given rank");
  synth_cmd->add_option("--rank", synth.rank, "Explicit given rank")->delimiter(',');
  synth_cmd->add_option("--tau", synth.tau, "Sparsity weight (default: formula)");
  synth_cmd->add_option("--alpha", synth.alpha, "Split weights")->delimiter(',');
  synth_cmd->add_option("--tol", synth.tol, "Convergence tolerance");
  synth_cmd->add_option("--max-iters", synth.max_iters, "Iteration cap");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decompose a TNSR1 tensor file");
  solve_cmd->add_option("--in", solve.input, "Input TNSR1 file")->required();
  solve_cmd->add_option("--solver", solve.solver, "fttnn or ttnn");
  solve_cmd->add_option("--rank", solve.rank, "Given rank (fttnn)")->delimiter(',');
  solve_cmd->add_option("--tau", solve.tau, "Sparsity weight (default: formula)");
  solve_cmd->add_option("--alpha", solve.alpha, "Split weights")->delimiter(',');
  solve_cmd->add_option("--tol", solve.tol, "Convergence tolerance");
  solve_cmd->add_option("--max-iters", solve.max_iters, "Iteration cap");
  solve_cmd->add_option("--seed", solve.seed, "RNG seed");
  solve_cmd->add_option("--out-x", solve.out_x, "Write low-rank estimate here");
  solve_cmd->add_option("--out-s", solve.out_s, "Write sparse estimate here");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark solvers on synthetic data");
  bench_cmd->add_option("--dims", bench.dims, "Tensor extents")->required()->delimiter(',');
  bench_cmd->add_option("--tt-rank", bench.tt_rank, "Planted TT rank")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--nr", bench.nrs, "Noise ratios, e.g. 0.05,0.10")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Trials per setting");
  bench_cmd->add_option("--solvers", bench.solvers, "Comma list: fttnn,ttnn");
  bench_cmd->add_option("--q", bench.q, "Rank scale");
  bench_cmd->add_option("--sweep-q", bench.sweep_q, "Rank-scale sweep start:step:stop");
  bench_cmd->add_option("--seed", bench.seed, "Base RNG seed");
  bench_cmd->add_option("--out", bench.out, "CSV output path (default: stdout)");
  bench_cmd->add_option("--tol", bench.tol, "Convergence tolerance");
  bench_cmd->add_option("--max-iters", bench.max_iters, "Iteration cap");
  bench_cmd->add_option("--parallel", bench.parallel, "Concurrent trials");

  try {
    app.parse(argc, argv);
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (solve_cmd->parsed()) return cmd_solve(solve);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
