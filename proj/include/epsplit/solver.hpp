#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epsplit/bifunction.hpp"
#include "epsplit/feasible_set.hpp"
#include "epsplit/prox.hpp"
#include "epsplit/schedule.hpp"
#include "epsplit/vec.hpp"

namespace epsplit {

// Iteration k of the driver, from the current iterate x^k:
//   g_i = diagSubgrad_i(x^k)                         i = 1, 2
//   eta_k = max{beta_k, ||g1||, ||g2||},  lambda_k = beta_k / eta_k
//   y^k     = argmin{ lambda_k f1(x^k, y) + 1/2 ||y - x^k||^2 : y in C }
//   x^{k+1} = argmin{ lambda_k f2(x^k, y) + 1/2 ||y - y^k||^2 : y in C }
// plus the ergodic running average z = sum lambda_i x^i / sum lambda_i over
// the iterates since the last restart.
//
// Stopping:
//   Plain            ||x^{k+1} - x^k|| < stopEps, result x^{k+1}
//   Ergodic          ||z_new - z_prev|| < stopEps, result z_new
//   ErgodicWithRestart  as Ergodic; additionally, when
//                    stopEps <= ||z_new - z_prev|| <= restartTau the run is
//                    re-seeded at the newest iterate folded into the average
//                    and the accumulators/schedule reset per the config flags.

enum class SolverMode { Plain, Ergodic, ErgodicWithRestart };
enum class RunStatus { Converged, MaxIterReached };

struct SolverConfig {
  SolverMode mode = SolverMode::ErgodicWithRestart;
  StepSchedule schedule = StepSchedule::harmonicScale(10.0);
  long maxIter = 10000;
  double stopEps = 1e-4;
  double restartTau = 1e-3;
  bool resetScheduleOnRestart = true;
  bool resetErgodicOnRestart = true;
  GenericProxOptions proxOptions{};
};

struct SolverState {
  long k = 0;              // global iteration index
  long scheduleIndex = 0;  // index fed to the schedule; reset on restart
  Vector x;                // current iterate x^k
  Vector y;                // last intermediate point y^{k-1}
  double lambdaSum = 0.0;  // sum of lambda weights since last reset
  Vector zNumerator;       // sum of lambda_i x^i since last reset
  Vector z;                // current ergodic point
  Vector lastZ;            // previous ergodic point
  bool hasZ = false;
  bool hasLastZ = false;
  long restartCount = 0;
  long itersSinceRestart = 0;
};

struct IterationRecord {
  long k = 0;
  double beta = 0.0;
  double eta = 0.0;
  double lambda = 0.0;
  double deltaZ = 0.0;  // ||z_new - z_prev||; 0 while undefined
  bool restarted = false;
  Vector x;      // iterate the step started from
  Vector y;      // intermediate point
  Vector xNext;  // produced iterate
  Vector z;      // ergodic point after this step
  long prox1Iterations = 0;
  long prox2Iterations = 0;
  double prox1Residual = 0.0;
  double prox2Residual = 0.0;
};

struct RunResult {
  Vector point;  // final x (Plain) or ergodic point (other modes)
  RunStatus status = RunStatus::MaxIterReached;
  std::vector<IterationRecord> trace;
  long totalIterations = 0;
  long restartCount = 0;
  long itersFromLastRestart = 0;
  std::vector<std::string> warnings;
};

SolverState initialState(const FeasibleSet& S, Vector x0);

// One full iteration from state.x; updates the ergodic accumulators with
// weight lambda_k at x^k and advances the iterate. record.restarted is left
// false; run() flips it on the step that triggers a restart.
std::pair<SolverState, IterationRecord> iterateOnce(
    const SplitBifunction& F, const FeasibleSet& S, SolverState state,
    double beta, const GenericProxOptions& proxOptions = {});

// zNumerator / lambdaSum; requires at least one completed iteration.
Vector ergodicPoint(const SolverState& state);

// Full driver. An infeasible x0 is projected onto S first (recorded as a
// warning). Identical inputs produce bit-identical traces.
RunResult run(const SplitBifunction& F, const FeasibleSet& S, const Vector& x0,
              const SolverConfig& cfg);

const char* toString(RunStatus status);
const char* toString(SolverMode mode);

}  // namespace epsplit
