#pragma once

#include <vector>

#include "epsplit/bifunction.hpp"
#include "epsplit/feasible_set.hpp"
#include "epsplit/solver.hpp"
#include "epsplit/vec.hpp"

namespace epsplit {

// Independent certification, separate from the solver path.
//
// primalResidual computes rho = min{ f(xbar, y) : y in S }, which is <= 0
// (f vanishes on the diagonal) and equals 0 exactly at solutions; xbar is a
// certified eps-solution iff rho >= -eps. When both components carry
// affine/diagonal-quadratic structure the minimum is solved exactly; the
// minimum of an affine function over an unbounded set is -infinity, which is
// reported as such. Otherwise a projected-gradient solve with regularization
// continuation (eps in {1e-2, 1e-4}, then raw) runs and the smallest f value
// found is reported.
double primalResidual(const SplitBifunction& F, const FeasibleSet& S,
                      const Vector& xbar, double tol = 1e-8);

// Test oracle (n <= 3, Box or BoxSum only): the grid point maximizing
// min over grid y of f(x, y).
Vector bruteForceEquilibrium(const SplitBifunction& F, const FeasibleSet& S,
                             double gridStep);

// Worst violation of the per-iteration distance control
//   ||x^{k+1} - x*||^2 <= ||x^k - x*||^2 + 2 beta_k^2
// over a trace: max_k (||xNext - x*||^2 - ||x - x*||^2 - 2 beta_k^2).
// Nonpositive (up to roundoff) whenever x* solves the dual problem.
double fejerMonitor(const std::vector<IterationRecord>& trace,
                    const Vector& xstar);

// Worst violation of the strong-pseudomonotonicity decay
//   ||x^{k+1} - x*||^2 <= (1 - 2 modulus lambda_k) ||x^k - x*||^2 + 2 beta_k^2.
double strongDecayMonitor(const std::vector<IterationRecord>& trace,
                          const Vector& xstar, double modulus);

}  // namespace epsplit
