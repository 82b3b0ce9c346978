#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tailassign/tailassign.hpp"

// Command line front end: solve, validate, generate, oracle-check.
// Summary tables go to stdout, per-iteration log lines to stderr.

namespace ta = tailassign;

namespace {

void attach_solver_flags(CLI::App* cmd, ta::DriverConfig& cfg) {
  cmd->add_option("--epsilon", cfg.epsilon, "disjoint selection penalization factor [0.8, 1.0]")
      ->check(CLI::Range(0.8, 1.0));
  cmd->add_flag("--strict-disjoint", cfg.strict_disjoint,
                "reject any overlap on positive-dual activities");
  cmd->add_option("--cp-iterations", cfg.cp_iterations,
                  "iterations priced on propagated post-connections");
  cmd->add_option("--workers", cfg.parallel_workers, "parallel pricing workers");
  cmd->add_flag("--serial", cfg.serial_mode, "serial pricing with dual re-evaluation");
  cmd->add_option("--max-iterations", cfg.max_cg_iterations, "column generation iteration cap");
  cmd->add_option("--time-limit", cfg.time_limit_seconds, "wall clock limit in seconds (0 = off)");
}

void live_logs(ta::DriverConfig& cfg) {
  cfg.on_iteration = [](const ta::IterationLogEntry& e) {
    std::fprintf(stderr, "iter %4d  lp %14.4f  generated %5d  selected %4d  min_rc %12.6f  %s%.0f ms\n",
                 e.iteration, e.lp_objective, e.columns_generated, e.columns_selected,
                 std::isfinite(e.min_reduced_cost) ? e.min_reduced_cost : 0.0,
                 e.used_post_connections ? "[post] " : "", e.wall_ms);
  };
  cfg.on_fixing = [](const ta::FixingLogEntry& e) {
    std::fprintf(stderr, "fix  threshold %d%%  candidates %d  fixed %d  deferred %d  lp %14.4f\n",
                 e.threshold_pct, e.candidates, e.fixed, e.deferred, e.lp_objective);
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tailassign - aircraft tail assignment by column generation"};
  app.require_subcommand(1);

  // --- solve ---------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  std::string solve_instance;
  std::string solve_out;
  std::string dump_lp;
  bool quiet = false;
  ta::DriverConfig cfg;
  solve_cmd->add_option("--instance", solve_instance, "instance JSON file")->required();
  solve_cmd->add_option("--out", solve_out, "report JSON output path");
  solve_cmd->add_option("--dump-lp", dump_lp, "write the final RMP in LP text format");
  solve_cmd->add_flag("--quiet", quiet, "suppress per-iteration log lines");
  attach_solver_flags(solve_cmd, cfg);

  // --- validate ------------------------------------------------------------
  auto* validate_cmd = app.add_subcommand("validate", "validate an instance file");
  std::string validate_instance_path;
  validate_cmd->add_option("--instance", validate_instance_path, "instance JSON file")->required();

  // --- generate ------------------------------------------------------------
  auto* generate_cmd = app.add_subcommand("generate", "generate a synthetic instance");
  ta::GeneratorParams gp;
  std::string generate_out;
  bool infeasible = false;
  generate_cmd->add_option("--out", generate_out, "output instance path")->required();
  generate_cmd->add_option("--seed", gp.seed, "random seed");
  generate_cmd->add_option("--tails", gp.tails, "number of tails");
  generate_cmd->add_option("--flights", gp.flights, "number of flights");
  generate_cmd->add_option("--days", gp.horizon_days, "horizon length in days");
  generate_cmd->add_option("--bases", gp.bases, "number of airports");
  generate_cmd->add_option("--maintenance-fraction", gp.maintenance_base_fraction,
                           "fraction of airports with hangars");
  generate_cmd->add_option("--preassignment-rate", gp.preassignment_rate,
                           "fraction of tails with a pre-assigned maintenance event");
  generate_cmd->add_flag("--disrupted", infeasible,
                         "perturb the carry-in state instead of guaranteeing feasibility");

  // --- oracle-check ----------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "solve a small instance and diff against exhaustive enumeration");
  std::string oracle_instance;
  std::uint64_t oracle_seed = 1;
  oracle_cmd->add_option("--instance", oracle_instance,
                         "small instance JSON file (generated when omitted)");
  oracle_cmd->add_option("--seed", oracle_seed, "seed for the generated check instance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      ta::Instance inst = ta::parse_instance(solve_instance);
      if (!quiet) live_logs(cfg);
      ta::RmpState final_state;
      auto [solution, report] = ta::solve(inst, cfg, &final_state);
      if (!dump_lp.empty()) {
        std::ofstream os(dump_lp);
        ta::write_lp_format(final_state, os);
      }
      if (!solve_out.empty()) ta::write_report(inst, solution, report, solve_out);
      ta::print_summary(inst, solution, report, std::cout);
      return 0;
    }

    if (*validate_cmd) {
      ta::ValidationReport report;
      ta::parse_instance(validate_instance_path, &report);
      if (report.ok()) {
        std::cout << "instance is valid\n";
        return 0;
      }
      std::cout << report.to_string();
      return 1;
    }

    if (*generate_cmd) {
      gp.guarantee_feasible = !infeasible;
      ta::Instance inst = ta::generate_instance(gp);
      ta::write_instance(inst, generate_out);
      std::cout << "wrote " << generate_out << ": " << inst.tails.size() << " tails, "
                << inst.activities.size() << " activities, " << inst.horizon_days << " days\n";
      return 0;
    }

    if (*oracle_cmd) {
      ta::Instance inst;
      if (!oracle_instance.empty()) {
        inst = ta::parse_instance(oracle_instance);
      } else {
        ta::GeneratorParams small;
        small.tails = 3;
        small.flights = 12;
        small.horizon_days = 2;
        small.bases = 4;
        small.seed = oracle_seed;
        inst = ta::generate_instance(small);
      }
      ta::DriverConfig check_cfg;
      auto [solution, report] = ta::solve(inst, check_cfg);
      ta::IntegralSolution exact = ta::solve_exact(inst);
      double gap = solution.objective - exact.objective;
      std::cout << "solver objective  " << solution.objective << "\n"
                << "oracle objective  " << exact.objective << "\n"
                << "gap               " << gap << "\n";
      if (gap < -1e-6) {
        std::cout << "MISMATCH: solver beat the exhaustive optimum; one of them is wrong\n";
        return 1;
      }
      std::cout << (gap <= 1e-6 ? "solver matched the exact optimum\n"
                                : "solver is a heuristic above the optimum here\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
