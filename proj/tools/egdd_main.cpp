#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "egdd/baselines.hpp"
#include "egdd/excessive_gap.hpp"
#include "egdd/generators.hpp"
#include "egdd/manifest.hpp"
#include "egdd/profile.hpp"

namespace fs = std::filesystem;
using namespace egdd;

namespace {

constexpr int kExitInputError = 3;
constexpr int kExitNumericalError = 4;

struct SolveArgs {
  std::string problem_dir;
  std::string algorithm = "idda1";
  std::string trace_path;
  double beta0 = 1.0;
  double eps_tilde = 1e-3;
  double eps_f = 0.05;
  double tol_feas = 1e-3;
  double tol_gap = 1e-3;
  long maxiter = 5000;
  int threads = 1;
  bool no_stopping = false;
};

SolveReport dispatch_solve(const Problem& p, const SolveArgs& a) {
  SolveOptions opt;
  opt.beta0 = a.beta0;
  opt.eps_tilde = a.eps_tilde;
  opt.stop.tol_feas = a.tol_feas;
  opt.stop.tol_gap = a.tol_gap;
  opt.max_iterations = a.maxiter;
  opt.threads = a.threads;
  opt.disable_stopping = a.no_stopping;

  if (a.algorithm == "idda1") return run_algorithm1(p, opt);
  if (a.algorithm == "idda2") return run_algorithm2(p, opt);
  if (a.algorithm == "fixed-beta1") return run_fixed_beta1(p, a.eps_f, opt);
  if (a.algorithm == "admm-v1") return run_admm(p, admm_v1(), opt);
  if (a.algorithm == "admm-v2") return run_admm(p, admm_v2(), opt);
  if (a.algorithm == "admm-v3") return run_admm(p, admm_v3(), opt);
  if (a.algorithm == "pcbdm") return run_pcbdm(p, PcbdmConfig{a.tol_gap}, opt);
  throw std::invalid_argument("unknown algorithm " + a.algorithm);
}

void print_summary(const SolveReport& rep) {
  const TraceRow& last = rep.last();
  std::printf("solver=%s status=%s iters=%ld rpfgap=%.3e phi=%.10g time_ms=%.1f\n",
              rep.solver.c_str(), status_name(rep.status), rep.iterations,
              last.rpfgap, last.phi, rep.total_ms);
}

int cmd_generate(const GeneratorSpec& spec, const std::string& out_dir) {
  Problem p = generate(spec);
  save_problem(p, out_dir);
  std::printf("generated family=%s M=%d m=%d n=%d -> %s\n", spec.family.c_str(),
              p.size(), p.m, p.n(), out_dir.c_str());
  return 0;
}

int cmd_solve(const SolveArgs& a) {
  Problem p = load_problem(a.problem_dir);
  SolveReport rep = dispatch_solve(p, a);
  if (!a.trace_path.empty()) write_trace_csv(a.trace_path, rep);
  print_summary(rep);
  return status_exit_code(rep.status);
}

int cmd_bench(const std::string& suite_file, const std::string& algorithms,
              const std::string& out_dir, const SolveArgs& base) {
  std::ifstream in(suite_file);
  if (!in) throw std::invalid_argument("cannot open suite file " + suite_file);
  nlohmann::json suite;
  in >> suite;

  std::vector<std::string> algs;
  {
    std::stringstream ss(algorithms);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) algs.push_back(item);
  }
  if (algs.empty()) throw std::invalid_argument("no algorithms given");

  fs::create_directories(out_dir);
  std::vector<RunRecord> records;
  for (const auto& entry : suite.at("problems")) {
    const std::string id = entry.at("id").get<std::string>();
    Problem p;
    if (entry.contains("path")) {
      fs::path dir = entry.at("path").get<std::string>();
      if (dir.is_relative()) dir = fs::path(suite_file).parent_path() / dir;
      p = load_problem(dir);
    } else {
      GeneratorSpec spec;
      spec.family = entry.at("family").get<std::string>();
      spec.cls = entry.value("class", 1);
      const std::string sc = entry.value("scenario", "I");
      spec.scenario = sc == "II" ? '2' : 'I';
      spec.seed = entry.value("seed", 0);
      spec.m = entry.value("m", 50);
      spec.n = entry.value("n", 128);
      spec.alpha_star = entry.value("alpha_star", 0.75);
      p = generate(spec);
    }
    for (const auto& alg : algs) {
      SolveArgs a = base;
      a.algorithm = alg;
      SolveReport rep = dispatch_solve(p, a);
      write_trace_csv(fs::path(out_dir) / (id + "_" + alg + ".trace.csv"), rep);
      RunRecord r;
      r.solver = alg;
      r.problem = id;
      r.status = rep.status;
      r.iterations = rep.iterations;
      r.ms = rep.total_ms;
      r.rpfgap = rep.last().rpfgap;
      r.objective = rep.last().phi;
      records.push_back(r);
      std::printf("[%s] ", id.c_str());
      print_summary(rep);
    }
  }
  write_records_csv(fs::path(out_dir) / "records.csv", records);
  std::printf("wrote %zu records to %s/records.csv\n", records.size(), out_dir.c_str());
  return 0;
}

int cmd_profile(const std::string& records_path, const std::string& metric,
                const std::string& out_file) {
  Metric m;
  if (metric == "iters")
    m = Metric::iterations;
  else if (metric == "time")
    m = Metric::time;
  else
    throw std::invalid_argument("metric must be iters or time");
  auto records = read_records(records_path);
  auto curves = performance_profile(records, m);
  fs::path out(out_file);
  write_profile_csv(out, curves);
  fs::path svg = out;
  svg.replace_extension(".svg");
  write_profile_svg(svg, curves);
  std::printf("wrote %s and %s\n", out.string().c_str(), svg.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"egdd: inexact excessive-gap dual decomposition solvers"};
  app.require_subcommand(1);

  // generate
  GeneratorSpec spec;
  std::string scenario_str = "I", out_dir;
  auto* gen = app.add_subcommand("generate", "generate a benchmark problem");
  gen->add_option("--family", spec.family,
                  "basis_pursuit | nonsmooth_l1 | separable_qp | nonlinear_log");
  gen->add_option("--class", spec.cls, "problem class (family dependent)");
  gen->add_option("--scenario", scenario_str, "I or II");
  gen->add_option("--seed", spec.seed, "rng seed");
  gen->add_option("--m", spec.m, "coupling rows (basis_pursuit)");
  gen->add_option("--n", spec.n, "variables / components");
  gen->add_option("--alpha-star", spec.alpha_star, "prox shift ratio");
  gen->add_option("--out", out_dir, "output directory")->required();

  // solve
  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve a problem directory");
  solve->add_option("--problem", sa.problem_dir, "problem directory")->required();
  solve->add_option("--algorithm", sa.algorithm,
                    "idda1 | idda2 | fixed-beta1 | admm-v1 | admm-v2 | admm-v3 | pcbdm");
  solve->add_option("--trace", sa.trace_path, "write per-iteration CSV trace here");
  solve->add_option("--beta0", sa.beta0, "initial smoothness parameter");
  solve->add_option("--eps-tilde", sa.eps_tilde, "inexactness budget");
  solve->add_option("--eps-f", sa.eps_f, "target accuracy (fixed-beta1)");
  solve->add_option("--tol-feas", sa.tol_feas, "feasibility tolerance");
  solve->add_option("--tol-gap", sa.tol_gap, "gap / stagnation tolerance");
  solve->add_option("--maxiter", sa.maxiter, "iteration cap");
  solve->add_option("--threads", sa.threads, "worker threads (0 = hardware)");
  solve->add_flag("--no-stopping", sa.no_stopping, "disable early termination");

  // bench
  std::string suite_file, algorithms = "idda1,idda2";
  auto* bench = app.add_subcommand("bench", "run a suite of problems");
  bench->add_option("--suite", suite_file, "suite JSON file")->required();
  bench->add_option("--algorithms", algorithms, "comma separated algorithm ids");
  bench->add_option("--out", out_dir, "output directory")->required();
  bench->add_option("--beta0", sa.beta0, "initial smoothness parameter");
  bench->add_option("--eps-tilde", sa.eps_tilde, "inexactness budget");
  bench->add_option("--tol-feas", sa.tol_feas, "feasibility tolerance");
  bench->add_option("--tol-gap", sa.tol_gap, "gap / stagnation tolerance");
  bench->add_option("--maxiter", sa.maxiter, "iteration cap");
  bench->add_option("--threads", sa.threads, "worker threads");

  // profile
  std::string records_path, metric = "iters", profile_out;
  auto* prof = app.add_subcommand("profile", "build performance profiles");
  prof->add_option("--records", records_path, "records csv file or directory")
      ->required();
  prof->add_option("--metric", metric, "iters | time");
  prof->add_option("--out", profile_out, "output csv (an svg is written alongside)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    spec.scenario = scenario_str == "II" ? '2' : 'I';
    if (gen->parsed()) return cmd_generate(spec, out_dir);
    if (solve->parsed()) return cmd_solve(sa);
    if (bench->parsed()) return cmd_bench(suite_file, algorithms, out_dir, sa);
    if (prof->parsed()) return cmd_profile(records_path, metric, profile_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumericalError;
  }
  return 0;
}
