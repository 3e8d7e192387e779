// Command-line front end: evaluate separability criteria and entanglement
// bounds on built-in or file-loaded states, run parameter and noise sweeps
// to CSV, search the (alpha, beta) grid, and rerun the built-in
// reproduction checkpoints.
//
// Exit codes: 0 on success, 1 when a reproduction checkpoint fails, 2 on
// usage or input validation errors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entsep/entsep.hpp"

namespace {

using entsep::BipartiteDensityMatrix;
using entsep::BoundReport;
using entsep::CriterionParams;
using entsep::CriterionVerdict;
using entsep::Measure;

/// Six-significant-digit rendering for terminal reports.
std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::string(buf);
}

/// Seventeen-significant-digit rendering for CSV files.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

/// Flags shared by every subcommand that consumes a state.
struct StateOptions {
  std::string state;
  double noise_weight = 0.0;
  entsep::ChessboardParams chessboard = entsep::kDefaultChessboardParams;
  CLI::Option* noise_option = nullptr;
};

void add_state_options(CLI::App* cmd, StateOptions* opts) {
  cmd->add_option("--state", opts->state,
                  "builtin state (bell | tiles | chessboard) or path to a "
                  "state file")
      ->required();
  opts->noise_option =
      cmd->add_option("--noise-weight", opts->noise_weight,
                      "white-noise weight w in [0, 1] mixed into the state")
          ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--cb-m", opts->chessboard.m, "chessboard parameter m")
      ->capture_default_str();
  cmd->add_option("--cb-n", opts->chessboard.n, "chessboard parameter n")
      ->capture_default_str();
  cmd->add_option("--cb-a", opts->chessboard.a, "chessboard parameter a")
      ->capture_default_str();
  cmd->add_option("--cb-b", opts->chessboard.b, "chessboard parameter b")
      ->capture_default_str();
  cmd->add_option("--cb-c", opts->chessboard.c, "chessboard parameter c")
      ->capture_default_str();
  cmd->add_option("--cb-d", opts->chessboard.d, "chessboard parameter d")
      ->capture_default_str();
}

/// Builds the base state named by --state, without the noise mix.
BipartiteDensityMatrix load_base_state(const StateOptions& opts) {
  if (opts.state == "bell") {
    return entsep::bell_state();
  }
  if (opts.state == "tiles") {
    return entsep::tiles_ppt_state();
  }
  if (opts.state == "chessboard") {
    return entsep::chessboard_state(opts.chessboard);
  }
  return entsep::read_state(opts.state);
}

/// Base state with --noise-weight applied.
BipartiteDensityMatrix load_state(const StateOptions& opts) {
  BipartiteDensityMatrix base = load_base_state(opts);
  if (opts.noise_weight > 0.0) {
    return entsep::mix_white_noise(base, opts.noise_weight);
  }
  return base;
}

Measure parse_measure(const std::string& name) {
  if (name == "concurrence") {
    return Measure::Concurrence;
  }
  if (name == "cren") {
    return Measure::CREN;
  }
  throw std::invalid_argument("unknown measure '" + name +
                              "' (expected concurrence | cren)");
}

// ---------------------------------------------------------------- eval ----

struct EvalOptions {
  StateOptions state;
  std::string criterion;
  std::string measure;
  double alpha = 0.0;
  double beta = 0.0;
};

int run_eval(const EvalOptions& opts) {
  if (opts.criterion.empty() == opts.measure.empty()) {
    throw std::invalid_argument(
        "eval requires exactly one of --criterion or --measure");
  }
  const BipartiteDensityMatrix rho = load_state(opts.state);

  if (!opts.criterion.empty()) {
    CriterionVerdict verdict{};
    if (opts.criterion == "ppt") {
      verdict = entsep::ppt_test(rho);
    } else if (opts.criterion == "ccnr") {
      verdict = entsep::ccnr_test(rho);
    } else if (opts.criterion == "enhanced") {
      verdict = entsep::enhanced_realignment_test(rho);
    } else if (opts.criterion == "kyfan") {
      verdict = entsep::kyfan_criterion_test(
          rho, CriterionParams(opts.alpha, opts.beta));
    } else {
      throw std::invalid_argument(
          "unknown criterion '" + opts.criterion +
          "' (expected ppt | ccnr | enhanced | kyfan)");
    }
    std::printf("criterion: %s\n", opts.criterion.c_str());
    if (verdict.params.has_value()) {
      std::printf("alpha: %s\nbeta: %s\n", fmt6(verdict.params->alpha).c_str(),
                  fmt6(verdict.params->beta).c_str());
    }
    std::printf("margin: %s\n", fmt6(verdict.margin).c_str());
    std::printf("detected: %s\n", verdict.detected ? "yes" : "no");
    return 0;
  }

  const Measure measure = parse_measure(opts.measure);
  const BoundReport report =
      entsep::lower_bound(rho, CriterionParams(opts.alpha, opts.beta), measure);
  std::printf("measure: %s\n", opts.measure.c_str());
  std::printf("alpha: %s\nbeta: %s\n", fmt6(report.params.alpha).c_str(),
              fmt6(report.params.beta).c_str());
  std::printf("bound: %s\n", fmt6(report.bound).c_str());
  std::printf("raw: %s\n", fmt6(report.raw).c_str());
  std::printf("clamped: %s\n", report.clamped ? "yes" : "no");
  return 0;
}

// --------------------------------------------------------------- sweep ----

struct SweepOptions {
  StateOptions state;
  std::string variable = "noise-weight";
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  std::string measure;
  double alpha = 0.0;
  double beta = 0.0;
  std::string output;
};

int run_sweep(const SweepOptions& opts) {
  if (opts.variable != "noise-weight" &&
      opts.variable != "alpha-beta-diagonal") {
    throw std::invalid_argument(
        "unknown sweep variable '" + opts.variable +
        "' (expected noise-weight | alpha-beta-diagonal)");
  }
  if (opts.steps < 2) {
    throw std::invalid_argument("sweep requires --steps >= 2");
  }
  if (!(opts.start <= opts.stop)) {
    throw std::invalid_argument("sweep requires --start <= --stop");
  }
  const bool sweep_noise = opts.variable == "noise-weight";
  if (sweep_noise) {
    if (opts.start < 0.0 || opts.stop > 1.0) {
      throw std::invalid_argument(
          "noise-weight sweeps require the range to lie in [0, 1]");
    }
    if (opts.state.noise_option != nullptr &&
        opts.state.noise_option->count() > 0) {
      throw std::invalid_argument(
          "--noise-weight conflicts with --var noise-weight; the sweep "
          "variable supplies the weight");
    }
  }
  const Measure measure = parse_measure(opts.measure);
  const BipartiteDensityMatrix base =
      sweep_noise ? load_base_state(opts.state) : load_state(opts.state);

  std::string csv = "w,value,raw,clamped\n";
  for (int i = 0; i < opts.steps; ++i) {
    const double x =
        opts.start + (opts.stop - opts.start) * i / (opts.steps - 1);
    BoundReport report =
        sweep_noise
            ? entsep::lower_bound(entsep::mix_white_noise(base, x),
                                  CriterionParams(opts.alpha, opts.beta),
                                  measure)
            : entsep::lower_bound(base, CriterionParams(x, x), measure);
    csv += fmt17(x) + "," + fmt17(report.bound) + "," + fmt17(report.raw) +
           "," + (report.clamped ? "1" : "0") + "\n";
  }

  if (opts.output.empty()) {
    std::fputs(csv.c_str(), stdout);
    return 0;
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open '" + opts.output +
                                "' for writing");
  }
  out << csv;
  if (!out.good()) {
    throw std::invalid_argument("write to '" + opts.output + "' failed");
  }
  return 0;
}

// ------------------------------------------------------------ optimize ----

struct OptimizeOptions {
  StateOptions state;
  double grid_min = 1e-2;
  double grid_max = 1e4;
  int diag_points = 60;
  int mesh_points = 15;
};

int run_optimize(const OptimizeOptions& opts) {
  if (!(opts.grid_min > 0.0) || !(opts.grid_max >= opts.grid_min)) {
    throw std::invalid_argument(
        "optimize requires 0 < --grid-min <= --grid-max");
  }
  if (opts.diag_points < 1 || opts.mesh_points < 1) {
    throw std::invalid_argument(
        "optimize requires at least one diagonal and one mesh point");
  }
  const BipartiteDensityMatrix rho = load_state(opts.state);

  // Same layout as the default grid: the CCNR point, a diagonal log sweep,
  // and a full log-spaced mesh.
  const double lmin = std::log10(opts.grid_min);
  const double lmax = std::log10(opts.grid_max);
  std::vector<CriterionParams> grid;
  grid.emplace_back(0.0, 0.0);
  for (int i = 0; i < opts.diag_points; ++i) {
    const double frac =
        opts.diag_points == 1 ? 0.0 : static_cast<double>(i) / (opts.diag_points - 1);
    const double x = std::pow(10.0, lmin + (lmax - lmin) * frac);
    grid.emplace_back(x, x);
  }
  std::vector<double> axis;
  for (int i = 0; i < opts.mesh_points; ++i) {
    const double frac =
        opts.mesh_points == 1 ? 0.0 : static_cast<double>(i) / (opts.mesh_points - 1);
    axis.push_back(std::pow(10.0, lmin + (lmax - lmin) * frac));
  }
  for (const double a : axis) {
    for (const double b : axis) {
      grid.emplace_back(a, b);
    }
  }

  const auto [best_params, best] = entsep::optimize_params(rho, grid);
  std::printf("grid points: %zu\n", grid.size());
  std::printf("best alpha: %s\n", fmt6(best_params.alpha).c_str());
  std::printf("best beta: %s\n", fmt6(best_params.beta).c_str());
  std::printf("margin: %s\n", fmt6(best.margin).c_str());
  std::printf("certified: %s\n", best.detected ? "yes" : "no");
  return 0;
}

// ----------------------------------------------------------- reproduce ----

struct ReproduceOptions {
  double ex1_alpha = 250.0;
};

struct Checkpoint {
  std::string label;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

int run_reproduce(const ReproduceOptions& opts) {
  std::vector<Checkpoint> checkpoints;

  // Chessboard mixture, Ky Fan margin at (alpha, beta) = (250, 240).
  {
    const BipartiteDensityMatrix rho = entsep::mix_white_noise(
        entsep::chessboard_state(entsep::kDefaultChessboardParams), 0.1);
    const CriterionVerdict verdict = entsep::kyfan_criterion_test(
        rho, CriterionParams(opts.ex1_alpha, 240.0));
    char label[96];
    std::snprintf(label, sizeof label,
                  "chessboard+noise kyfan margin (alpha=%g beta=240)",
                  opts.ex1_alpha);
    checkpoints.push_back({label, verdict.margin, 0.0027, 5e-4});
  }

  // Tiles concurrence bound at two parameter points.
  {
    const BipartiteDensityMatrix tiles = entsep::tiles_ppt_state();
    checkpoints.push_back(
        {"tiles concurrence bound (alpha=beta=1)",
         entsep::concurrence_lower_bound(tiles, CriterionParams(1.0, 1.0))
             .bound,
         0.05399, 1e-4});
    checkpoints.push_back(
        {"tiles concurrence bound (alpha=beta=100)",
         entsep::concurrence_lower_bound(tiles, CriterionParams(100.0, 100.0))
             .bound,
         0.055549, 1e-5});
    checkpoints.push_back(
        {"tiles noise threshold (alpha=beta=5)",
         entsep::detection_threshold(tiles, CriterionParams(5.0, 5.0),
                                     Measure::Concurrence),
         0.1177, 2e-3});
  }

  std::printf("%-52s %-12s %-12s %-10s %-8s %s\n", "checkpoint", "computed",
              "expected", "|diff|", "tol", "status");
  bool all_pass = true;
  std::string first_failure;
  for (const Checkpoint& c : checkpoints) {
    const double diff = std::abs(c.computed - c.expected);
    const bool pass = diff <= c.tolerance;
    if (!pass && first_failure.empty()) {
      first_failure = c.label;
    }
    all_pass = all_pass && pass;
    std::printf("%-52s %-12s %-12s %-10s %-8s %s\n", c.label.c_str(),
                fmt6(c.computed).c_str(), fmt6(c.expected).c_str(),
                fmt6(diff).c_str(), fmt6(c.tolerance).c_str(),
                pass ? "PASS" : "FAIL");
  }
  if (!all_pass) {
    std::fprintf(stderr, "reproduce: checkpoint failed: %s\n",
                 first_failure.c_str());
    return 1;
  }
  std::printf("all checkpoints passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Entanglement detection via realignment-based separability criteria "
      "and lower bounds on concurrence and CREN"};
  app.require_subcommand(1);

  EvalOptions eval_opts;
  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate one criterion or one measure bound on a state");
  add_state_options(eval, &eval_opts.state);
  eval->add_option("--criterion", eval_opts.criterion,
                   "criterion: ppt | ccnr | enhanced | kyfan");
  eval->add_option("--measure", eval_opts.measure,
                   "measure bound: concurrence | cren");
  eval->add_option("--alpha", eval_opts.alpha, "border weight alpha")
      ->capture_default_str();
  eval->add_option("--beta", eval_opts.beta, "border weight beta")
      ->capture_default_str();

  SweepOptions sweep_opts;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "sweep a variable and write the bound curve as CSV");
  add_state_options(sweep, &sweep_opts.state);
  sweep->add_option("--var", sweep_opts.variable,
                    "sweep variable: noise-weight | alpha-beta-diagonal")
      ->capture_default_str();
  sweep->add_option("--start", sweep_opts.start, "first grid value")
      ->required();
  sweep->add_option("--stop", sweep_opts.stop, "last grid value")->required();
  sweep->add_option("--steps", sweep_opts.steps, "number of grid points (>= 2)")
      ->required();
  sweep->add_option("--measure", sweep_opts.measure,
                    "measure bound: concurrence | cren")
      ->required();
  sweep->add_option("--alpha", sweep_opts.alpha,
                    "border weight alpha (fixed during noise sweeps)")
      ->capture_default_str();
  sweep->add_option("--beta", sweep_opts.beta,
                    "border weight beta (fixed during noise sweeps)")
      ->capture_default_str();
  sweep->add_option("--output", sweep_opts.output,
                    "output CSV path (stdout when omitted)");

  OptimizeOptions optimize_opts;
  CLI::App* optimize = app.add_subcommand(
      "optimize", "grid-search (alpha, beta) for the largest margin");
  add_state_options(optimize, &optimize_opts.state);
  optimize->add_option("--grid-min", optimize_opts.grid_min,
                       "smallest nonzero grid value")
      ->capture_default_str();
  optimize->add_option("--grid-max", optimize_opts.grid_max,
                       "largest grid value")
      ->capture_default_str();
  optimize->add_option("--diag-points", optimize_opts.diag_points,
                       "log-spaced points on the alpha = beta diagonal")
      ->capture_default_str();
  optimize->add_option("--mesh-points", optimize_opts.mesh_points,
                       "log-spaced points per axis of the full mesh")
      ->capture_default_str();

  ReproduceOptions reproduce_opts;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "rerun the built-in reproduction checkpoints");
  reproduce
      ->add_option("--ex1-alpha", reproduce_opts.ex1_alpha,
                   "alpha for the chessboard checkpoint (sensitivity debug)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) {
      return run_eval(eval_opts);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_opts);
    }
    if (optimize->parsed()) {
      return run_optimize(optimize_opts);
    }
    if (reproduce->parsed()) {
      return run_reproduce(reproduce_opts);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
