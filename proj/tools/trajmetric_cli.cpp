#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <string>

#include "trajmetric/admm.hpp"
#include "trajmetric/errors.hpp"
#include "trajmetric/exact.hpp"
#include "trajmetric/json_io.hpp"
#include "trajmetric/lp.hpp"
#include "trajmetric/scenario.hpp"

namespace {

using nlohmann::json;
using namespace trajmetric;

struct ComputeArgs {
  std::string a_path, b_path;
  double c = 5.0, gamma = 2.0, p = 1.0;
  std::string solver = "viterbi";
  double rho = 2.0;
  int max_iters = 100;
  int qp_iters = 5;
  bool decompose_flag = false;
  bool as_json = false, as_csv = false;
};

json params_echo(const MetricParams& params) {
  return json{{"c", params.c}, {"gamma", params.gamma}, {"p", params.p}};
}

json breakdown_json(const CostBreakdown& d) {
  return json{{"localization", d.localization},
              {"missed", d.missed},
              {"false", d.false_},
              {"switching", d.switching}};
}

void emit_compute(const ComputeArgs& args, const MetricParams& params,
                  double value, double raw_cost, const CostBreakdown& dec) {
  if (args.as_csv) {
    std::printf("solver,c,gamma,p,value,raw_cost");
    if (args.decompose_flag)
      std::printf(",localization,missed,false,switching");
    std::printf("\n%s,%.17g,%.17g,%.17g,%.17g,%.17g", args.solver.c_str(),
                params.c, params.gamma, params.p, value, raw_cost);
    if (args.decompose_flag)
      std::printf(",%.17g,%.17g,%.17g,%.17g", dec.localization, dec.missed,
                  dec.false_, dec.switching);
    std::printf("\n");
    return;
  }
  json out;
  out["solver"] = args.solver;
  out["params"] = params_echo(params);
  out["value"] = value;
  out["raw_cost"] = raw_cost;
  if (args.decompose_flag) out["decomposition"] = breakdown_json(dec);
  if (args.as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "value = " << std::setprecision(17) << value << "\n";
    if (args.decompose_flag)
      std::cout << "  localization = " << dec.localization
                << "\n  missed = " << dec.missed
                << "\n  false = " << dec.false_
                << "\n  switching = " << dec.switching << "\n";
  }
}

int run_compute(const ComputeArgs& args, bool oracle) {
  MetricParams params;
  params.c = args.c;
  params.gamma = args.gamma;
  params.p = args.p;
  params.validate();

  const TrajectorySet a = trajectory_set_from_json(read_file(args.a_path));
  const TrajectorySet b = trajectory_set_from_json(read_file(args.b_path));
  require_compatible(a, b);

  double value, raw;
  CostBreakdown dec;
  if (oracle) {
    const ExactResult r = brute_force_metric(a, b, params);
    value = r.value;
    raw = r.raw_cost;
    dec = r.decomposition;
  } else if (args.solver == "viterbi") {
    const ExactResult r = exact_metric(a, b, params);
    value = r.value;
    raw = r.raw_cost;
    dec = r.decomposition;
  } else if (args.solver == "lp") {
    const LpResult r = lp_metric(a, b, params);
    value = r.value;
    raw = r.raw_cost;
    dec = r.decomposition;
  } else if (args.solver == "admm") {
    AdmmConfig cfg;
    cfg.rho = args.rho;
    cfg.max_admm_iters = args.max_iters;
    cfg.max_qp_iters = args.qp_iters;
    cfg.validate();
    const AdmmResult r = admm_metric(a, b, params, cfg);
    value = r.value;
    raw = r.raw_cost;
    dec = r.decomposition;
  } else {
    throw ValidationError("unknown solver: " + args.solver);
  }
  emit_compute(args, params, value, raw, dec);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric on finite sets of trajectories"};
  app.require_subcommand(1);

  ComputeArgs cargs;
  auto add_compute_flags = [&](CLI::App* cmd, bool with_solver) {
    cmd->add_option("--a", cargs.a_path, "first trajectory-set JSON file")
        ->required();
    cmd->add_option("--b", cargs.b_path, "second trajectory-set JSON file")
        ->required();
    cmd->add_option("--c", cargs.c, "cut-off c");
    cmd->add_option("--gamma", cargs.gamma, "switching penalty gamma");
    cmd->add_option("--p", cargs.p, "exponent p");
    if (with_solver) {
      cmd->add_option("--solver", cargs.solver, "viterbi | lp | admm")
          ->check(CLI::IsMember({"viterbi", "lp", "admm"}));
      cmd->add_option("--rho", cargs.rho, "ADMM penalty rho");
      cmd->add_option("--max-iters", cargs.max_iters, "ADMM iteration cap");
      cmd->add_option("--qp-iters", cargs.qp_iters, "ADMM inner QP iterations");
    }
    cmd->add_flag("--decompose", cargs.decompose_flag,
                  "report localization/missed/false/switching costs");
    cmd->add_flag("--json", cargs.as_json, "JSON output");
    cmd->add_flag("--csv", cargs.as_csv, "CSV output");
  };

  CLI::App* compute = app.add_subcommand("compute", "compute the metric");
  add_compute_flags(compute, true);
  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force reference value (cap-guarded)");
  add_compute_flags(oracle, false);

  std::string config_path, out_path, grid_path;
  std::uint64_t seed = 0;
  int samples = 100, reps = 1;
  std::string mc_solver = "lp";
  double mc_c = 5.0, mc_gamma = 2.0, mc_p = 1.0;

  CLI::App* simulate = app.add_subcommand("simulate", "generate a random scenario");
  simulate->add_option("--config", config_path, "scenario config JSON")->required();
  simulate->add_option("--seed", seed, "RNG seed")->required();
  simulate->add_option("--out", out_path, "output trajectory-set JSON")->required();

  CLI::App* mc = app.add_subcommand("mc", "Monte-Carlo RFS metric estimate");
  mc->add_option("--config", config_path, "scenario config JSON")->required();
  mc->add_option("--samples", samples, "number of Monte-Carlo samples")->required();
  mc->add_option("--solver", mc_solver, "viterbi | lp | admm")
      ->check(CLI::IsMember({"viterbi", "lp", "admm"}));
  mc->add_option("--seed", seed, "RNG seed");
  mc->add_option("--c", mc_c, "cut-off c");
  mc->add_option("--gamma", mc_gamma, "switching penalty gamma");
  mc->add_option("--p", mc_p, "exponent p");
  mc->add_option("--out", out_path, "output JSON")->required();

  CLI::App* bench = app.add_subcommand("bench", "runtime benchmark grid");
  bench->add_option("--grid", grid_path, "grid JSON: T/n_max/solvers arrays")
      ->required();
  bench->add_option("--reps", reps, "repetitions per cell")->required();
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--c", mc_c, "cut-off c");
  bench->add_option("--gamma", mc_gamma, "switching penalty gamma");
  bench->add_option("--p", mc_p, "exponent p");
  bench->add_option("--out", out_path, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return run_compute(cargs, false);
    if (oracle->parsed()) return run_compute(cargs, true);

    if (simulate->parsed()) {
      ScenarioConfig cfg = scenario_config_from_json(read_file(config_path));
      cfg.seed = seed;
      cfg.validate();
      write_file(out_path, trajectory_set_to_json(generate_scenario(cfg)) + "\n");
      return 0;
    }
    if (mc->parsed()) {
      ScenarioConfig cfg = scenario_config_from_json(read_file(config_path));
      MetricParams params;
      params.c = mc_c;
      params.gamma = mc_gamma;
      params.p = mc_p;
      params.validate();
      PairSampler sampler = [&](int s) {
        ScenarioConfig cx = cfg;
        cx.seed = seed ^ (0x2545F4914F6CDD1DULL * (2 * s + 1));
        ScenarioConfig cy = cfg;
        cy.seed = seed ^ (0x2545F4914F6CDD1DULL * (2 * s + 2));
        return std::make_pair(generate_scenario(cx), generate_scenario(cy));
      };
      PairMetric metric = [&](const TrajectorySet& x, const TrajectorySet& y) {
        if (mc_solver == "viterbi") return exact_metric(x, y, params).value;
        if (mc_solver == "lp") return lp_metric(x, y, params).value;
        return admm_metric(x, y, params).value;
      };
      const McEstimate est = rfs_metric_mc(sampler, params, samples, metric);
      json out;
      out["params"] = params_echo(params);
      out["solver"] = mc_solver;
      out["seed"] = seed;
      out["value"] = est.value;
      out["std_error"] = est.std_error;
      out["samples"] = est.samples;
      out["failures"] = est.failures;
      write_file(out_path, out.dump(2) + "\n");
      return 0;
    }
    if (bench->parsed()) {
      const BenchGrid grid = bench_grid_from_json(read_file(grid_path));
      MetricParams params;
      params.c = mc_c;
      params.gamma = mc_gamma;
      params.p = mc_p;
      params.validate();
      write_file(out_path, bench_to_csv(benchmark_scaling(grid, params, reps, seed)));
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "solver limit: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
