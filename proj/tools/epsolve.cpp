#include <iostream>

#include "CLI11.hpp"

#include "epsplit/cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"epsolve - splitting solver for equilibrium problems"};
  app.require_subcommand(1);

  epsplit::RunOptions runOpts;
  CLI::App* runCmd = app.add_subcommand(
      "run", "solve one (problem, schedule, mode) combination");
  runCmd->add_option("--problem", runOpts.problem,
                     "cournot | op | rotation | spm");
  runCmd->add_option("--n", runOpts.n, "problem dimension (cournot, spm)");
  runCmd->add_option("--beta-c", runOpts.betaC,
                     "step scale c in beta_k = c/(k+1)");
  runCmd->add_option("--mode", runOpts.mode,
                     "plain | ergodic | ergodic-restart");
  runCmd->add_option("--max-iter", runOpts.maxIter, "iteration cap");
  runCmd->add_option("--eps", runOpts.eps, "stopping tolerance");
  runCmd->add_option("--tau", runOpts.tau, "restart threshold");
  runCmd->add_option("--trace", runOpts.tracePath,
                     "write the iteration trace (.csv -> CSV, else JSONL)");
  runCmd->add_option("--param-file", runOpts.paramFile,
                     "JSON problem description (overrides --problem/--n)");
  runCmd->add_option("--seed", runOpts.seed, "seed for randomized starts");

  epsplit::BenchOptions benchOpts;
  CLI::App* benchCmd = app.add_subcommand(
      "bench", "run the ten standard Cournot benchmark configurations");
  benchCmd->add_option("--csv", benchOpts.csvPath, "write results as CSV");
  benchCmd->add_option("--max-iter", benchOpts.maxIter, "iteration cap");
  benchCmd->add_option("--eps", benchOpts.eps, "stopping tolerance");
  benchCmd->add_option("--tau", benchOpts.tau, "restart threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return epsplit::kExitUsage;
  }

  if (runCmd->parsed())
    return epsplit::cmdRun(runOpts, std::cout, std::cerr);
  return epsplit::cmdBench(benchOpts, std::cout, std::cerr);
}
