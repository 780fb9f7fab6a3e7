#include "epsplit/cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include "epsplit/errors.hpp"
#include "epsplit/problems.hpp"
#include "epsplit/solver.hpp"
#include "epsplit/trace_io.hpp"
#include "epsplit/verify.hpp"

namespace epsplit {

namespace {

struct UsageError : ContractError {
  using ContractError::ContractError;
};

SolverMode parseMode(const std::string& mode) {
  if (mode == "plain") return SolverMode::Plain;
  if (mode == "ergodic") return SolverMode::Ergodic;
  if (mode == "ergodic-restart") return SolverMode::ErgodicWithRestart;
  throw UsageError("unknown mode '" + mode +
                   "' (expected plain | ergodic | ergodic-restart)");
}

ProblemInstance makeInstance(const RunOptions& opts) {
  if (!opts.paramFile.empty()) return loadProblemFile(opts.paramFile);
  if (opts.problem == "cournot")
    return buildCournot(CournotParams::benchmarkDefaults(opts.n));
  if (opts.problem == "op") {
    // Default instance: Q = 2I in one dimension on [0, 2].
    OpParams p;
    p.Q = {{2.0}};
    p.boxLo = {0.0};
    p.boxHi = {2.0};
    return buildOp(p);
  }
  if (opts.problem == "rotation") return buildRotation();
  if (opts.problem == "spm") {
    ProblemInstance inst =
        buildStronglyPseudomonotone(opts.n, 1.0, -1.0, 1.0);
    // Seeded random start inside the box.
    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& e : inst.defaultStart) e = u(rng);
    return inst;
  }
  throw UsageError("unknown problem '" + opts.problem +
                   "' (expected cournot | op | rotation | spm)");
}

struct RowOutcome {
  RunResult result;
  double residual = 0.0;
  double seconds = 0.0;
  bool certified = false;
};

RowOutcome execute(const ProblemInstance& inst, const SolverConfig& cfg) {
  RowOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  out.result = run(inst.bifunction, inst.set, inst.defaultStart, cfg);
  const auto t1 = std::chrono::steady_clock::now();
  out.seconds = std::chrono::duration<double>(t1 - t0).count();
  out.residual = primalResidual(inst.bifunction, inst.set, out.result.point);
  out.certified = out.result.status == RunStatus::Converged &&
                  out.residual >= -kCertificationEps;
  return out;
}

}  // namespace

int cmdRun(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const ProblemInstance inst = makeInstance(opts);
    SolverConfig cfg;
    cfg.mode = parseMode(opts.mode);
    cfg.schedule = StepSchedule::harmonicScale(opts.betaC);
    cfg.maxIter = opts.maxIter;
    cfg.stopEps = opts.eps;
    cfg.restartTau = opts.tau;

    const RowOutcome o = execute(inst, cfg);
    for (const auto& w : o.result.warnings) err << "warning: " << w << "\n";

    out << "problem=" << inst.name << " n=" << inst.set.dimension()
        << " beta=" << cfg.schedule.descriptor() << " mode=" << opts.mode
        << " status=" << toString(o.result.status)
        << " iters=" << o.result.totalIterations
        << " restarts=" << o.result.restartCount
        << " since_restart=" << o.result.itersFromLastRestart
        << " residual=" << formatDouble(o.residual) << " time_s=";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", o.seconds);
    out << buf << "\n";

    if (!opts.tracePath.empty())
      writeTraceFile(opts.tracePath, o.result.trace, inst.set.dimension());
    return o.certified ? kExitOk : kExitNotCertified;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

std::vector<BenchRow> benchmarkSuite() {
  return {
      {2, 10.0, 2, 0, 2},      {3, 10.0, 639, 2, 9},   {4, 10.0, 911, 2, 4},
      {5, 10.0, 1027, 2, 2},   {10, 10.0, 1201, 1, 2}, {10, 100.0, 266, 1, 2},
      {15, 10.0, 2967, 2, 2},  {15, 100.0, 408, 1, 2}, {20, 10.0, 5007, 2, 2},
      {20, 100.0, 539, 1, 2},
  };
}

int cmdBench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%3s  %-10s  %7s  %8s  %5s  %9s  %9s  %8s  %12s  %8s  %s",
                  "n", "beta", "iters", "restarts", "last", "ref_iters",
                  "ref_rest", "ref_last", "residual", "time_s", "status");
    out << line << "\n";

    std::string csv =
        "n,beta,iterations,restarts,iters_from_last_restart,ref_iterations,"
        "ref_restarts,ref_iters_from_last_restart,residual,seconds,converged,"
        "certified\n";
    bool allCertified = true;

    for (const BenchRow& row : benchmarkSuite()) {
      const ProblemInstance inst =
          buildCournot(CournotParams::benchmarkDefaults(row.n));
      SolverConfig cfg;
      cfg.mode = SolverMode::ErgodicWithRestart;
      cfg.schedule = StepSchedule::harmonicScale(row.betaC);
      cfg.maxIter = opts.maxIter;
      cfg.stopEps = opts.eps;
      cfg.restartTau = opts.tau;

      const RowOutcome o = execute(inst, cfg);
      allCertified = allCertified && o.certified;

      std::snprintf(line, sizeof(line),
                    "%3d  %-10s  %7ld  %8ld  %5ld  %9ld  %9ld  %8ld  %12.3e  "
                    "%8.3f  %s",
                    row.n, cfg.schedule.descriptor().c_str(),
                    o.result.totalIterations, o.result.restartCount,
                    o.result.itersFromLastRestart, row.refIterations,
                    row.refRestarts, row.refFromLastRestart, o.residual,
                    o.seconds, o.certified ? "ok" : "FAILED");
      out << line << "\n";

      csv += std::to_string(row.n) + "," + cfg.schedule.descriptor() + "," +
             std::to_string(o.result.totalIterations) + "," +
             std::to_string(o.result.restartCount) + "," +
             std::to_string(o.result.itersFromLastRestart) + "," +
             std::to_string(row.refIterations) + "," +
             std::to_string(row.refRestarts) + "," +
             std::to_string(row.refFromLastRestart) + "," +
             formatDouble(o.residual) + "," + formatDouble(o.seconds) + "," +
             (o.result.status == RunStatus::Converged ? "1" : "0") + "," +
             (o.certified ? "1" : "0") + "\n";
    }

    if (!opts.csvPath.empty()) {
      std::ofstream file(opts.csvPath);
      if (!file) throw ContractError("cannot open " + opts.csvPath);
      file << csv;
    }
    return allCertified ? kExitOk : kExitNotCertified;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace epsplit
