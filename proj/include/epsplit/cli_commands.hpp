#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epsplit {

// Exit codes shared by both subcommands:
//   0  solver converged and the result certified (primal residual >= -1e-3)
//   1  runtime failure
//   2  usage error
//   3  ran, but not converged or not certified
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotCertified = 3;

inline constexpr double kCertificationEps = 1e-3;

struct RunOptions {
  std::string problem = "cournot";  // cournot | op | rotation | spm
  int n = 2;
  double betaC = 10.0;
  std::string mode = "ergodic-restart";  // plain | ergodic | ergodic-restart
  long maxIter = 10000;
  double eps = 1e-4;
  double tau = 1e-3;
  std::string tracePath;  // ".csv" -> CSV, otherwise JSON lines
  std::string paramFile;  // overrides problem/n when set
  unsigned seed = 1;      // randomized spm start and sampled checks
};

int cmdRun(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct BenchRow {
  int n;
  double betaC;
  long refIterations;
  long refRestarts;
  long refFromLastRestart;
};

// The ten benchmark configurations (n, beta scale) with reference iteration
// counts for side-by-side comparison.
std::vector<BenchRow> benchmarkSuite();

struct BenchOptions {
  std::string csvPath;
  long maxIter = 10000;
  double eps = 1e-4;
  double tau = 1e-3;
};

int cmdBench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace epsplit
