#include "epsplit/solver.hpp"

#include <cmath>
#include <utility>

#include "epsplit/errors.hpp"

namespace epsplit {

const char* toString(RunStatus status) {
  switch (status) {
    case RunStatus::Converged:
      return "converged";
    case RunStatus::MaxIterReached:
      return "max-iterations";
  }
  return "unknown";
}

const char* toString(SolverMode mode) {
  switch (mode) {
    case SolverMode::Plain:
      return "plain";
    case SolverMode::Ergodic:
      return "ergodic";
    case SolverMode::ErgodicWithRestart:
      return "ergodic-restart";
  }
  return "unknown";
}

SolverState initialState(const FeasibleSet& S, Vector x0) {
  if (x0.size() != S.dimension())
    throw ContractError("initialState: dimension mismatch");
  if (!allFinite(x0)) throw ContractError("initialState: nonfinite start");
  SolverState state;
  state.x = std::move(x0);
  state.zNumerator = zeros(S.dimension());
  return state;
}

std::pair<SolverState, IterationRecord> iterateOnce(
    const SplitBifunction& F, const FeasibleSet& S, SolverState state,
    double beta, const GenericProxOptions& proxOptions) {
  if (state.x.size() != F.dimension || F.dimension != S.dimension())
    throw ContractError("iterateOnce: dimension mismatch");
  if (!allFinite(state.x))
    throw ContractError("iterateOnce: nonfinite iterate");

  const Vector& x = state.x;
  const Vector g1 = F.diagSubgrad1(x);
  const Vector g2 = F.diagSubgrad2(x);
  const StepSizes step = stepSize(beta, g1, g2);

  ProxDiagnostics d1, d2;
  Vector y = proxStep(F, 1, x, x, step.lambda, S, proxOptions, &d1);
  Vector xNext = proxStep(F, 2, x, y, step.lambda, S, proxOptions, &d2);
  if (!allFinite(y) || !allFinite(xNext))
    throw InternalError("iterateOnce: subproblem produced nonfinite point");

  // Ergodic accumulators take the pre-step iterate x^k with weight lambda_k.
  state.lambdaSum += step.lambda;
  for (std::size_t i = 0; i < x.size(); ++i)
    state.zNumerator[i] += step.lambda * x[i];
  if (state.hasZ) {
    state.lastZ = state.z;
    state.hasLastZ = true;
  }
  state.z = scaled(state.zNumerator, 1.0 / state.lambdaSum);
  state.hasZ = true;
  const double deltaZ = state.hasLastZ ? distance(state.z, state.lastZ) : 0.0;

  IterationRecord record;
  record.k = state.k;
  record.beta = beta;
  record.eta = step.eta;
  record.lambda = step.lambda;
  record.deltaZ = deltaZ;
  record.x = x;
  record.y = y;
  record.xNext = xNext;
  record.z = state.z;
  record.prox1Iterations = d1.iterations;
  record.prox2Iterations = d2.iterations;
  record.prox1Residual = d1.residual;
  record.prox2Residual = d2.residual;

  state.y = std::move(y);
  state.x = std::move(xNext);
  state.k += 1;
  state.itersSinceRestart += 1;
  return {std::move(state), std::move(record)};
}

Vector ergodicPoint(const SolverState& state) {
  if (!(state.lambdaSum > 0.0))
    throw ContractError("ergodicPoint: no iterations yet");
  return scaled(state.zNumerator, 1.0 / state.lambdaSum);
}

RunResult run(const SplitBifunction& F, const FeasibleSet& S, const Vector& x0,
              const SolverConfig& cfg) {
  if (cfg.maxIter < 1) throw ContractError("run: maxIter must be >= 1");
  if (!(cfg.stopEps > 0.0)) throw ContractError("run: stopEps must be > 0");
  if (!(cfg.restartTau > 0.0)) throw ContractError("run: restartTau must be > 0");
  if (x0.size() != S.dimension()) throw ContractError("run: dimension mismatch");

  RunResult result;
  if (cfg.mode == SolverMode::ErgodicWithRestart &&
      cfg.restartTau <= cfg.stopEps) {
    result.warnings.push_back(
        "restartTau <= stopEps: the restart trigger can never fire");
  }

  Vector start = x0;
  if (!containsPoint(S, start)) {
    start = projectOntoSet(start, S);
    result.warnings.push_back("infeasible start projected onto the set");
  }

  SolverState state = initialState(S, std::move(start));
  result.trace.reserve(static_cast<std::size_t>(std::min(cfg.maxIter, 100000L)));
  result.status = RunStatus::MaxIterReached;

  for (long iter = 0; iter < cfg.maxIter; ++iter) {
    const double beta = cfg.schedule.betaAt(state.scheduleIndex);
    const Vector xBefore = state.x;
    auto [next, record] = iterateOnce(F, S, std::move(state), beta,
                                      cfg.proxOptions);
    state = std::move(next);
    state.scheduleIndex += 1;

    if (cfg.mode == SolverMode::Plain) {
      if (distance(state.x, xBefore) < cfg.stopEps) {
        result.status = RunStatus::Converged;
        result.trace.push_back(std::move(record));
        break;
      }
      result.trace.push_back(std::move(record));
      continue;
    }

    // Ergodic modes: both the stop and the restart test compare consecutive
    // ergodic points, which need two iterations since the last reset.
    if (state.itersSinceRestart >= 2) {
      const double deltaZ = record.deltaZ;
      if (deltaZ < cfg.stopEps) {
        result.status = RunStatus::Converged;
        result.trace.push_back(std::move(record));
        break;
      }
      if (cfg.mode == SolverMode::ErgodicWithRestart &&
          deltaZ <= cfg.restartTau) {
        // Re-seed at the newest iterate folded into the average and start
        // over.
        record.restarted = true;
        state.x = xBefore;
        state.restartCount += 1;
        state.itersSinceRestart = 0;
        if (cfg.resetErgodicOnRestart) {
          state.lambdaSum = 0.0;
          state.zNumerator = zeros(S.dimension());
          state.hasZ = false;
          state.hasLastZ = false;
        }
        if (cfg.resetScheduleOnRestart) state.scheduleIndex = 0;
      }
    }
    result.trace.push_back(std::move(record));
  }

  if (cfg.mode == SolverMode::Plain) {
    result.point = state.x;
  } else {
    result.point = state.hasZ ? state.z : state.x;
  }
  result.totalIterations = static_cast<long>(result.trace.size());
  result.restartCount = state.restartCount;
  long lastRestartEnd = 0;
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    if (result.trace[i].restarted) lastRestartEnd = static_cast<long>(i) + 1;
  }
  result.itersFromLastRestart = result.totalIterations - lastRestartEnd;
  return result;
}

}  // namespace epsplit
