// Command-line front end: solve, prune, verify, gen and bench.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "persist/generate.hpp"
#include "persist/metrics.hpp"
#include "persist/oracle.hpp"
#include "persist/persistency.hpp"
#include "persist/report.hpp"
#include "persist/solvers.hpp"
#include "persist/uai.hpp"

namespace {

using namespace persist;

constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

struct CommonFlags {
  double tol = 1e-6;
  int max_iters = 1500;
  double gap = 1e-5;
  int stall = 100;
  double cap = 2e6;
  std::string values = "cost";

  SolverConfig config() const {
    SolverConfig c;
    c.integrality_tolerance = tol;
    c.enumeration_cap = cap;
    c.stop.max_passes = max_iters;
    c.stop.relative_gap = gap;
    c.stop.stall_passes = stall;
    return c;
  }

  UaiValues uai_values() const { return values == "probability" ? UaiValues::Probability : UaiValues::Cost; }
};

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--tol", flags.tol, "Integrality tolerance on marginals")->capture_default_str();
  app->add_option("--max-iters", flags.max_iters, "Maximum TRW-S passes")->capture_default_str();
  app->add_option("--gap", flags.gap, "TRW-S relative duality gap stop")->capture_default_str();
  app->add_option("--stall", flags.stall, "TRW-S passes without new commitments before stopping")->capture_default_str();
  app->add_option("--cap", flags.cap, "Enumeration cap for brute force")->capture_default_str();
  app->add_option("--values", flags.values, "Interpretation of UAI table entries")
      ->check(CLI::IsMember({"cost", "probability"}))
      ->capture_default_str();
}

struct GenFlags {
  std::string kind = "potts-grid";
  std::string hw = "8x8";
  int nodes = 8;
  int labels = 3;
  std::string coupling = "0.5:1";
  std::string noise = "0:10";
  double density = 0.4;
  bool integral = false;
  std::uint64_t seed = 0;
};

void add_gen_flags(CLI::App* app, GenFlags& flags) {
  app->add_option("--gen", flags.kind, "Generator kind")
      ->check(CLI::IsMember({"potts-grid", "random-pairwise", "random-hyper", "frustrated-cycle"}))
      ->capture_default_str();
  app->add_option("--hw", flags.hw, "Grid size as HxW")->capture_default_str();
  app->add_option("--nodes", flags.nodes, "Node count for random and cycle instances")->capture_default_str();
  app->add_option("--labels", flags.labels, "Labels per node")->capture_default_str();
  app->add_option("--coupling", flags.coupling, "Coupling range lo:hi")->capture_default_str();
  app->add_option("--noise", flags.noise, "Unary noise range lo:hi")->capture_default_str();
  app->add_option("--density", flags.density, "Edge probability for random instances")->capture_default_str();
  app->add_flag("--integral", flags.integral, "Draw whole-number potentials");
  app->add_option("--seed", flags.seed, "RNG seed")->capture_default_str();
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const double v = std::stod(text);
    return {v, v};
  }
  return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

InstanceSpec make_spec(const GenFlags& flags) {
  InstanceSpec spec;
  spec.kind = parse_generator_kind(flags.kind);
  const auto x = flags.hw.find('x');
  if (x == std::string::npos) throw DomainError("--hw expects HxW");
  spec.height = std::stoi(flags.hw.substr(0, x));
  spec.width = std::stoi(flags.hw.substr(x + 1));
  spec.nodes = flags.nodes;
  spec.labels = flags.labels;
  std::tie(spec.coupling_min, spec.coupling_max) = parse_range(flags.coupling);
  std::tie(spec.noise_min, spec.noise_max) = parse_range(flags.noise);
  spec.edge_density = flags.density;
  spec.integral = flags.integral;
  spec.seed = flags.seed;
  return spec;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

std::string format_output(const SolverOutput& out) {
  std::ostringstream s;
  for (std::size_t v = 0; v < out.labels.size(); ++v) {
    s << (v ? " " : "");
    if (out.labels[v]) {
      s << *out.labels[v];
    } else {
      s << '#';
    }
  }
  return s.str();
}

int run_solve(const std::string& path, const std::string& solver_name, const CommonFlags& flags) {
  const GraphicalModel model = read_uai_file(path, flags.uai_values());
  const SolverKind kind = parse_solver_kind(solver_name);
  const SolverConfig config = flags.config();
  std::printf("solver: %s\n", to_string(kind).c_str());
  if (kind == SolverKind::BruteForce) {
    const auto bf = solve_bruteforce(model, config.enumeration_cap, config.tie_tolerance);
    std::printf("value: %.17g\n", bf.value);
    std::ostringstream s;
    for (std::size_t v = 0; v < bf.best.size(); ++v) s << (v ? " " : "") << bf.best[v];
    std::printf("labeling: %s\noptima: %zu\n", s.str().c_str(), bf.all_optima.size());
    return 0;
  }
  if (kind == SolverKind::ExactLp) {
    const auto lp = solve_lp_exact(model, config);
    std::printf("value: %.17g\nlabeling: %s\n", lp.value, format_output(lp.output).c_str());
    for (NodeId v = 0; v < model.num_nodes(); ++v) {
      std::printf("marginal %d:", v);
      const auto& m = lp.marginals.node[static_cast<std::size_t>(v)];
      for (Eigen::Index i = 0; i < m.size(); ++i) std::printf(" %.17g", m[i]);
      std::printf("\n");
    }
    return 0;
  }
  const auto out = solve_trws(model, config.stop);
  std::printf("bound: %.17g\nlabeling: %s\npasses: %ld\n", out.bound, format_output(out).c_str(), out.iterations);
  if (const auto x = out.labeling()) std::printf("value: %.17g\n", energy(model, *x));
  return 0;
}

int run_prune(const std::string& path, const std::string& solver_name, const std::string& mode_name,
              const std::string& out_path, const CommonFlags& flags) {
  const GraphicalModel model = read_uai_file(path, flags.uai_values());
  PruneOptions options;
  options.solver = flags.config();
  const auto start = std::chrono::steady_clock::now();
  const auto result = prune(model, parse_solver_kind(solver_name), parse_boundary_mode(mode_name), options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text(out_path, prune_report(model, result, path, seconds).dump(2) + "\n");
  if (!out_path.empty() && out_path != "-") {
    std::printf("persistent nodes: %zu of %d (%.6f)\n", result.A_star.size(), model.num_nodes(),
                persistency_percentage(model, result.A_star));
  }
  return 0;
}

int run_verify(const std::string& report_path, const std::string& model_path, const CommonFlags& flags) {
  const GraphicalModel model = read_uai_file(model_path, flags.uai_values());
  std::ifstream in(report_path);
  if (!in) throw ParseError("cannot open '" + report_path + "'");
  nlohmann::json report;
  try {
    in >> report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  const ReportClaim claim = claim_from_report(report);
  if (claim.num_nodes != model.num_nodes()) throw DomainError("report and model disagree on the node count");
  OracleOptions oracle;
  oracle.cap = flags.cap;
  const auto persistent = verify_persistent(model, claim.labeling.domain, claim.labeling, oracle);
  const auto strong = verify_strongly_persistent(model, claim.labeling.domain, claim.labeling, oracle);
  std::printf("persistent: %s\n", persistent.verdict ? "true" : "false");
  std::printf("strongly persistent: %s\n", strong.verdict ? "true" : "false");
  std::printf("global optima: %d\n", persistent.num_optima);
  return persistent.verdict ? 0 : kExitVerification;
}

int run_bench(const GenFlags& gen, int count, const std::string& solver_name, const std::string& mode_name,
              bool timing, const std::string& out_path, const CommonFlags& flags) {
  const InstanceSpec base = make_spec(gen);
  const SolverKind solver = parse_solver_kind(solver_name);
  const BoundaryMode mode = parse_boundary_mode(mode_name);
  PruneOptions options;
  options.solver = flags.config();

  std::string csv = bench_csv_header(timing) + "\n";
  for (int i = 0; i < count; ++i) {
    InstanceSpec spec = base;
    spec.seed = base.seed + static_cast<std::uint64_t>(i);
    const GraphicalModel model = generate(spec);
    const auto start = std::chrono::steady_clock::now();
    const auto result = prune(model, solver, mode, options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    BenchRow row;
    row.instance = to_string(spec.kind) + "-" + std::to_string(spec.seed);
    row.solver = solver;
    row.mode = mode;
    row.size = static_cast<int>(result.A_star.size());
    row.percentage = persistency_percentage(model, result.A_star);
    row.iterations = result.iterations();
    if (timing) row.seconds = seconds;
    csv += bench_csv_row(row) + "\n";
  }
  write_text(out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent partial labelings for discrete energy minimisation"};
  app.require_subcommand(1);
  CommonFlags flags;

  std::string model_path;
  std::string solver_name = "lp";
  std::string mode_name = "original";
  std::string out_path;

  auto* solve_cmd = app.add_subcommand("solve", "Solve a UAI model");
  solve_cmd->add_option("model", model_path, "UAI model file")->required();
  solve_cmd->add_option("--solver", solver_name, "bruteforce, lp or trws")->capture_default_str();
  add_common(solve_cmd, flags);

  auto* prune_cmd = app.add_subcommand("prune", "Find a persistent partial labeling");
  prune_cmd->add_option("model", model_path, "UAI model file")->required();
  prune_cmd->add_option("--solver", solver_name, "bruteforce, lp or trws")->capture_default_str();
  prune_cmd->add_option("--mode", mode_name, "Boundary potentials")
      ->check(CLI::IsMember({"original", "optimal"}))
      ->capture_default_str();
  prune_cmd->add_option("--out", out_path, "Report path (stdout when omitted)");
  add_common(prune_cmd, flags);

  std::string report_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a prune report against brute force");
  verify_cmd->add_option("report", report_path, "JSON report from prune")->required();
  verify_cmd->add_option("model", model_path, "UAI model file")->required();
  add_common(verify_cmd, flags);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic instance as UAI");
  add_gen_flags(gen_cmd, gen);
  gen_cmd->add_option("--out", out_path, "Output path (stdout when omitted)");

  int count = 10;
  bool timing = false;
  std::string bench_mode = "original";
  std::string bench_solver = "trws";
  GenFlags bench_gen;
  auto* bench_cmd = app.add_subcommand("bench", "Prune a sweep of generated instances and print CSV");
  add_gen_flags(bench_cmd, bench_gen);
  bench_cmd->add_option("--n", count, "Number of instances")->capture_default_str();
  bench_cmd->add_option("--solver", bench_solver, "bruteforce, lp or trws")->capture_default_str();
  bench_cmd->add_option("--mode", bench_mode, "Boundary potentials")
      ->check(CLI::IsMember({"original", "optimal"}))
      ->capture_default_str();
  bench_cmd->add_flag("--timing", timing, "Add a wall-clock column");
  bench_cmd->add_option("--out", out_path, "Output path (stdout when omitted)");
  add_common(bench_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(model_path, solver_name, flags);
    if (*prune_cmd) return run_prune(model_path, solver_name, mode_name, out_path, flags);
    if (*verify_cmd) return run_verify(report_path, model_path, flags);
    if (*gen_cmd) {
      write_text(out_path, write_uai(generate(make_spec(gen))));
      return 0;
    }
    if (*bench_cmd) return run_bench(bench_gen, count, bench_solver, bench_mode, timing, out_path, flags);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const CapExceededError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const UnsupportedArityError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
