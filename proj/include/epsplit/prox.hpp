#pragma once

#include "epsplit/bifunction.hpp"
#include "epsplit/feasible_set.hpp"
#include "epsplit/vec.hpp"

namespace epsplit {

// Counters and residuals reported by the iterative subsolvers. Closed-form
// paths leave everything at zero.
struct ProxDiagnostics {
  long iterations = 0;
  double residual = 0.0;
};

// Common data of the per-iteration subproblem
//   argmin{ lambda * f_i(x, y) + 1/2 ||y - anchor||^2 : y in set }.
struct ProxRequest {
  double lambda;
  Vector anchor;
  const FeasibleSet& set;
};

struct GenericProxOptions {
  double tol = 1e-10;     // projected-gradient fixed-point residual
  long maxIter = 100000;
};

// Componentwise clamp of p onto [lo, hi]; the Euclidean projection.
Vector projectBox(const Vector& p, const Vector& lo, const Vector& hi);

// Exact Euclidean projection onto any FeasibleSet variant.
Vector projectOntoSet(const Vector& p, const FeasibleSet& S,
                      ProxDiagnostics* diag = nullptr);

// Exact solver for
//   min  sum_i 1/2 d_i (y_i - t_i)^2
//   s.t. lo <= y <= hi,  sumLo <= sum_i y_i <= sumHi
// with d_i > 0. Both prox steps of the jointly constrained Cournot instance
// reduce to this. The solution is y_i(nu) = clamp(t_i - nu/d_i, lo_i, hi_i)
// where the scalar multiplier nu is found by bisection on the nonincreasing
// map nu -> sum_i y_i(nu) (nu = 0 when the sum constraint is slack), then
// polished by solving the active-set equality exactly. KKT residual <= tol.
Vector separableQpSumBox(const Vector& d, const Vector& t, const Vector& lo,
                         const Vector& hi, double sumLo, double sumHi,
                         double tol = 1e-10, ProxDiagnostics* diag = nullptr);

// argmin{ lambda <c, y> + 1/2 ||y - anchor||^2 : y in set }
//   = P_set(anchor - lambda c).
Vector proxAffine(const Vector& c, const ProxRequest& req,
                  ProxDiagnostics* diag = nullptr);

// argmin{ lambda sum_j delta_j y_j^2 + 1/2 ||y - anchor||^2 : y in set },
// i.e. the second Cournot subproblem; reduces to separableQpSumBox with
// d_j = 1 + 2 lambda delta_j, t_j = anchor_j / d_j.
Vector proxDiagQuad(const Vector& delta, const ProxRequest& req,
                    ProxDiagnostics* diag = nullptr);

// Scalar subproblem of the separable log term:
//   argmin{ phi(y) = -lambda ln(1 + max(0, y)) + 1/2 (y - z)^2 : y in [lo, hi] }.
// Solved exactly by candidate enumeration: the clamped vertex on the y <= 0
// branch, the positive-branch stationary point
//   y+ = ((z - 1) + sqrt((1 + z)^2 + 4 lambda)) / 2
// when it lies in [max(0, lo), hi], and the interval endpoints. Ties go to
// the smaller y.
double proxLog1d(double lambda, double z, double lo, double hi);

// Projected-gradient solve of the subproblem for GeneralQuadraticProx /
// GenericSmoothProx components. The objective
//   lambda f_i(x, y) + 1/2 ||y - anchor||^2
// is 1-strongly convex with (1 + lambda L)-Lipschitz gradient, so the fixed
// step 1/(1 + lambda L) contracts. Returns y with
//   ||y - P_set(y - grad(y))|| <= opts.tol;
// throws ConvergenceError (carrying the last residual) past opts.maxIter.
Vector proxGeneric(const ProxSpec& spec, const Vector& x,
                   const ProxRequest& req, const GenericProxOptions& opts = {},
                   ProxDiagnostics* diag = nullptr);

// Dispatch on F.proxSpec{which}: solves
//   argmin{ lambda f_which(x, y) + 1/2 ||y - anchor||^2 : y in S }
// by the exact solver the tag names, or proxGeneric for the black-box tags.
Vector proxStep(const SplitBifunction& F, int which, const Vector& x,
                const Vector& anchor, double lambda, const FeasibleSet& S,
                const GenericProxOptions& opts = {},
                ProxDiagnostics* diag = nullptr);

}  // namespace epsplit
