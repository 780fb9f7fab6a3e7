#include "epsplit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "epsplit/errors.hpp"
#include "epsplit/prox.hpp"

namespace epsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Separable-quadratic view of y -> f_i(xbar, y) up to an additive constant:
// sum_j (quad_j y_j^2 + lin_j y_j). Available for the affine, diagonal
// quadratic, and zero tags.
struct SepQuad {
  Vector quad;
  Vector lin;
};

std::optional<SepQuad> separablePart(const SplitBifunction& F, int which,
                                     const Vector& xbar) {
  const ProxSpec& spec = F.proxSpec(which);
  SepQuad part{zeros(F.dimension), zeros(F.dimension)};
  if (std::holds_alternative<ZeroProx>(spec)) return part;
  if (std::holds_alternative<AffineProx>(spec)) {
    part.lin = F.diagSubgrad(which, xbar);
    return part;
  }
  if (const auto* dq = std::get_if<DiagonalQuadraticProx>(&spec)) {
    part.quad = dq->delta;
    return part;
  }
  return std::nullopt;
}

// Exact minimizer of sum_j (quad_j y_j^2 + lin_j y_j) over S, or nullopt when
// the minimum is -infinity (possible only without bounds).
std::optional<Vector> minimizeSepQuad(const SepQuad& q, const FeasibleSet& S,
                                      const Vector& xbar, bool* unbounded) {
  const std::size_t n = S.dimension();
  *unbounded = false;
  switch (S.kind()) {
    case SetKind::WholeSpace: {
      Vector y(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (q.quad[i] > 0.0) {
          y[i] = -q.lin[i] / (2.0 * q.quad[i]);
        } else if (q.lin[i] != 0.0) {
          *unbounded = true;
          return std::nullopt;
        } else {
          y[i] = xbar[i];
        }
      }
      return y;
    }
    case SetKind::Box: {
      Vector y(n);
      const Vector& lo = S.lower();
      const Vector& hi = S.upper();
      for (std::size_t i = 0; i < n; ++i) {
        if (q.quad[i] > 0.0) {
          y[i] = std::min(std::max(-q.lin[i] / (2.0 * q.quad[i]), lo[i]), hi[i]);
        } else if (q.lin[i] > 0.0) {
          y[i] = lo[i];
        } else if (q.lin[i] < 0.0) {
          y[i] = hi[i];
        } else {
          y[i] = std::min(std::max(xbar[i], lo[i]), hi[i]);
        }
      }
      return y;
    }
    case SetKind::BoxSum: {
      for (std::size_t i = 0; i < n; ++i) {
        if (!(q.quad[i] > 0.0)) return std::nullopt;  // handled generically
      }
      Vector d(n), t(n);
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = 2.0 * q.quad[i];
        t[i] = -q.lin[i] / d[i];
      }
      return separableQpSumBox(d, t, S.lower(), S.upper(), S.sumLower(),
                               S.sumUpper());
    }
  }
  return std::nullopt;
}

// Gradient of y -> f_i(xbar, y) synthesized from the prox tag, together with
// a Lipschitz bound. The log term uses its right derivative at the kink.
struct GradPiece {
  std::function<Vector(const Vector&)> grad;
  double lipschitz;
};

GradPiece gradientPiece(const SplitBifunction& F, int which,
                        const Vector& xbar) {
  const ProxSpec& spec = F.proxSpec(which);
  if (std::holds_alternative<ZeroProx>(spec)) {
    return {[](const Vector& y) { return zeros(y.size()); }, 0.0};
  }
  if (std::holds_alternative<AffineProx>(spec)) {
    Vector c = F.diagSubgrad(which, xbar);
    return {[c](const Vector&) { return c; }, 0.0};
  }
  if (const auto* dq = std::get_if<DiagonalQuadraticProx>(&spec)) {
    Vector delta = dq->delta;
    double lip = 0.0;
    for (double d : delta) lip = std::max(lip, 2.0 * d);
    return {[delta](const Vector& y) {
              Vector g(y.size());
              for (std::size_t i = 0; i < y.size(); ++i)
                g[i] = 2.0 * delta[i] * y[i];
              return g;
            },
            lip};
  }
  if (const auto* gq = std::get_if<GeneralQuadraticProx>(&spec)) {
    const Matrix Q = gq->Q;
    return {[Q](const Vector& y) { return matVec(Q, y); }, gq->smoothnessBound};
  }
  if (const auto* lb = std::get_if<SeparableLogBarrierProx>(&spec)) {
    const double s = lb->scale;
    return {[s](const Vector& y) {
              Vector g(y.size());
              for (std::size_t i = 0; i < y.size(); ++i)
                g[i] = y[i] > 0.0 ? -s / (1.0 + y[i]) : 0.0;
              return g;
            },
            lb->scale};
  }
  const auto& gs = std::get<GenericSmoothProx>(spec);
  auto fn = gs.gradient;
  Vector xCopy = xbar;
  return {[fn, xCopy](const Vector& y) { return fn(xCopy, y); },
          gs.smoothnessBound};
}

// Projected-gradient minimization of f(xbar, .) + eps ||. - xbar||^2 over S.
Vector pgStage(const GradPiece& g1, const GradPiece& g2, const Vector& xbar,
               const FeasibleSet& S, double eps, double tol, long maxIter) {
  const double L = g1.lipschitz + g2.lipschitz + 2.0 * eps;
  const double step = 1.0 / std::max(L, 1e-12);
  Vector y = projectOntoSet(xbar, S);
  for (long k = 0; k < maxIter; ++k) {
    Vector grad = add(g1.grad(y), g2.grad(y));
    for (std::size_t i = 0; i < y.size(); ++i)
      grad[i] += 2.0 * eps * (y[i] - xbar[i]);
    const double residual = distance(y, projectOntoSet(sub(y, grad), S));
    if (residual <= tol) break;
    Vector trial(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) trial[i] = y[i] - step * grad[i];
    y = projectOntoSet(trial, S);
  }
  return y;
}

}  // namespace

double primalResidual(const SplitBifunction& F, const FeasibleSet& S,
                      const Vector& xbar, double tol) {
  if (xbar.size() != F.dimension || F.dimension != S.dimension())
    throw ContractError("primalResidual: dimension mismatch");
  if (!containsPoint(S, xbar, 1e-6))
    throw ContractError("primalResidual: xbar is not feasible");
  if (!(tol > 0.0)) throw ContractError("primalResidual: tol must be > 0");

  const auto part1 = separablePart(F, 1, xbar);
  const auto part2 = separablePart(F, 2, xbar);
  if (part1 && part2) {
    SepQuad total{add(part1->quad, part2->quad), add(part1->lin, part2->lin)};
    bool unbounded = false;
    const auto ystar = minimizeSepQuad(total, S, xbar, &unbounded);
    if (unbounded) return -kInf;
    if (ystar) return std::min(0.0, evalSum(F, xbar, *ystar));
    // fall through to the generic path (BoxSum with flat coordinates)
  }

  // Regularization continuation: minimize f(xbar, .) + eps ||. - xbar||^2 for
  // decreasing eps and keep the smallest raw f value seen. f(xbar, xbar) = 0
  // caps the result at 0.
  GradPiece g1 = gradientPiece(F, 1, xbar);
  GradPiece g2 = gradientPiece(F, 2, xbar);
  double best = 0.0;
  for (double eps : {1e-2, 1e-4, 0.0}) {
    const Vector y = pgStage(g1, g2, xbar, S, eps, tol, 200000);
    best = std::min(best, evalSum(F, xbar, y));
  }
  return best;
}

Vector bruteForceEquilibrium(const SplitBifunction& F, const FeasibleSet& S,
                             double gridStep) {
  const std::size_t n = S.dimension();
  if (n > 3) throw ContractError("bruteForceEquilibrium: n must be <= 3");
  if (S.kind() == SetKind::WholeSpace)
    throw ContractError("bruteForceEquilibrium: needs a bounded set");
  if (!(gridStep > 0.0)) throw ContractError("bruteForceEquilibrium: bad step");

  const Vector& lo = S.lower();
  const Vector& hi = S.upper();
  std::vector<Vector> axes(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double v = lo[i]; v <= hi[i] + 1e-12; v += gridStep)
      axes[i].push_back(v);
  }

  std::vector<Vector> points;
  Vector p(n);
  std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
    if (i == n) {
      if (containsPoint(S, p, 1e-12)) points.push_back(p);
      return;
    }
    for (double v : axes[i]) {
      p[i] = v;
      enumerate(i + 1);
    }
  };
  enumerate(0);
  if (points.empty())
    throw InfeasibleError("bruteForceEquilibrium: no feasible grid points");

  // Grid point maximizing min_y f(x, y); the inner loop prunes as soon as it
  // drops below the best lower value found so far.
  std::size_t bestIdx = 0;
  double bestWorst = -kInf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double worst = kInf;
    for (std::size_t j = 0; j < points.size(); ++j) {
      worst = std::min(worst, evalSum(F, points[i], points[j]));
      if (worst <= bestWorst) break;
    }
    if (worst > bestWorst) {
      bestWorst = worst;
      bestIdx = i;
    }
  }
  return points[bestIdx];
}

double fejerMonitor(const std::vector<IterationRecord>& trace,
                    const Vector& xstar) {
  double worst = -kInf;
  for (const IterationRecord& r : trace) {
    const double before = distance(r.x, xstar);
    const double after = distance(r.xNext, xstar);
    worst = std::max(worst,
                     after * after - before * before - 2.0 * r.beta * r.beta);
  }
  return worst;
}

double strongDecayMonitor(const std::vector<IterationRecord>& trace,
                          const Vector& xstar, double modulus) {
  double worst = -kInf;
  for (const IterationRecord& r : trace) {
    const double before = distance(r.x, xstar);
    const double after = distance(r.xNext, xstar);
    const double factor = 1.0 - 2.0 * modulus * r.lambda;
    worst = std::max(worst, after * after - factor * before * before -
                                2.0 * r.beta * r.beta);
  }
  return worst;
}

}  // namespace epsplit
