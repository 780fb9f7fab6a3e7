#pragma once

#include <optional>
#include <string>

#include "epsplit/bifunction.hpp"
#include "epsplit/feasible_set.hpp"
#include "epsplit/vec.hpp"

namespace epsplit {

// Named problem instances bundling a split bifunction, its feasible set, and
// whatever ground truth is available for certification.
struct ProblemInstance {
  std::string name;
  SplitBifunction bifunction;
  FeasibleSet set;
  Vector defaultStart;
  std::optional<Vector> knownSolution;
  // Sampled-property metadata. `monotone` marks instances whose bifunction
  // satisfies f(x,y) + f(y,x) <= 0 on the whole feasible set; the Cournot
  // instance does not (see buildCournot), although its equilibrium still
  // solves the dual problem, which is what the distance-decay inequalities
  // use.
  bool monotone = true;
  bool paramonotone = true;
  std::optional<double> strongPseudomonotoneModulus;
};

// n-firm linear oligopoly with a joint production quota. Firm i picks a
// production level x_i in [boxLo_i, boxHi_i]; the total sum_i x_i must stay
// in [sigmaLo, sigmaHi]. Price intercept alpha_i, slope delta_i, marginal
// cost mu_i. The fixed cost xi_i is carried for fidelity to the cost model
// but cancels out of the equilibrium bifunction, so it never enters f.
struct CournotParams {
  int n = 2;
  Vector alpha;  // > 0
  Vector delta;  // > 0
  Vector mu;     // > 0
  Vector xi;     // >= 0, unused by the bifunction
  Vector boxLo, boxHi;
  double sigmaLo = 0.0, sigmaHi = 0.0;
  std::optional<Vector> start;

  // The benchmark family: alpha = 120, delta = 1, mu = 30, xi = 0,
  // box [10, 50]^n, quota [10n + 10, 50n - 10], start 30*ones.
  static CournotParams benchmarkDefaults(int n);
};

// Box-constrained test problem min phi over [boxLo, boxHi] with
//   phi(x) = 1/2 x'Qx - sum_i ln(1 + max(0, x_i)),   Q symmetric psd,
// posed as an equilibrium problem via f(x, y) = phi(y) - phi(x) and split
// into the quadratic and log parts.
struct OpParams {
  Matrix Q;
  Vector boxLo, boxHi;
  std::optional<Vector> start;
};

// f1(x,y) = (Bt x + mu - alpha)'(y - x) with Bt zero-diagonal and row i
// filled with delta_i; f2(x,y) = 1/2 y'By - 1/2 x'Bx with B = diag(2 delta).
// Known solution attached when the parameters are symmetric across firms
// (every firm identical): the equilibrium is then the symmetric point s*ones
// with s = clamp((alpha - mu) / (delta (n+1)), max(boxLo, sigmaLo/n),
// min(boxHi, sigmaHi/n)), the one-dimensional KKT solve over the symmetric
// ray.
ProblemInstance buildCournot(const CournotParams& p);

ProblemInstance buildOp(const OpParams& p);

// The 2-d skew example f(x,y) = <Ax, y - x> on the whole plane with
// A = [[0, 1], [-1, 0]]: monotone but not paramonotone, unique solution 0,
// and the plain iteration satisfies ||x^{k+1}||^2 = (1 + lambda_k^2)
// ||x^k||^2, so it spirals outward from any nonzero start.
ProblemInstance buildRotation();

// f(x,y) = <betaModulus * x, y - x> on the box [lo, hi]^n with lo < 0 < hi:
// strongly monotone with modulus betaModulus, unique solution 0.
ProblemInstance buildStronglyPseudomonotone(int n, double betaModulus,
                                            double lo, double hi);

// Returns the symmetric-ray equilibrium s*ones when the parameters are
// symmetric across firms, nullopt otherwise.
std::optional<Vector> symmetricCournotEquilibrium(const CournotParams& p);

// JSON schemas (see README): {"kind": "cournot"|"op"|"rotation"|"spm", ...}.
// Scalar numeric fields broadcast to length-n vectors.
ProblemInstance problemFromJsonText(const std::string& text);
ProblemInstance loadProblemFile(const std::string& path);

}  // namespace epsplit
