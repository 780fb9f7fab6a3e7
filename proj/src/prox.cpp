#include "epsplit/prox.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "epsplit/errors.hpp"

namespace epsplit {

namespace {

double clampTo(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

void validateRequest(const ProxRequest& req) {
  if (!(req.lambda >= 0.0) || !std::isfinite(req.lambda))
    throw ContractError("prox: lambda must be finite and >= 0");
  if (req.anchor.size() != req.set.dimension())
    throw ContractError("prox: anchor dimension mismatch");
  if (!allFinite(req.anchor)) throw ContractError("prox: nonfinite anchor");
}

}  // namespace

Vector projectBox(const Vector& p, const Vector& lo, const Vector& hi) {
  if (p.size() != lo.size() || p.size() != hi.size())
    throw ContractError("projectBox: dimension mismatch");
  Vector r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (lo[i] > hi[i]) throw ContractError("projectBox: lo > hi");
    r[i] = clampTo(p[i], lo[i], hi[i]);
  }
  return r;
}

Vector projectOntoSet(const Vector& p, const FeasibleSet& S,
                      ProxDiagnostics* diag) {
  if (p.size() != S.dimension())
    throw ContractError("projectOntoSet: dimension mismatch");
  switch (S.kind()) {
    case SetKind::WholeSpace:
      return p;
    case SetKind::Box:
      return projectBox(p, S.lower(), S.upper());
    case SetKind::BoxSum:
      return separableQpSumBox(Vector(p.size(), 1.0), p, S.lower(), S.upper(),
                               S.sumLower(), S.sumUpper(), 1e-10, diag);
  }
  throw InternalError("projectOntoSet: unknown set kind");
}

Vector separableQpSumBox(const Vector& d, const Vector& t, const Vector& lo,
                         const Vector& hi, double sumLo, double sumHi,
                         double tol, ProxDiagnostics* diag) {
  const std::size_t n = d.size();
  if (t.size() != n || lo.size() != n || hi.size() != n || n == 0)
    throw ContractError("separableQpSumBox: dimension mismatch");
  if (!allFinite(d) || !allFinite(t) || !allFinite(lo) || !allFinite(hi))
    throw ContractError("separableQpSumBox: nonfinite input");
  if (!(tol > 0.0)) throw ContractError("separableQpSumBox: tol must be > 0");
  double loSum = 0.0, hiSum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(d[i] > 0.0))
      throw ContractError("separableQpSumBox: weights must be positive");
    if (lo[i] > hi[i]) throw ContractError("separableQpSumBox: lo > hi");
    loSum += lo[i];
    hiSum += hi[i];
  }
  if (sumLo > sumHi || loSum > sumHi || hiSum < sumLo)
    throw InfeasibleError("separableQpSumBox: empty feasible region");

  auto evalAt = [&](double nu, Vector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = clampTo(t[i] - nu / d[i], lo[i], hi[i]);
      s += y[i];
    }
    return s;
  };

  Vector y(n);
  const double s0 = evalAt(0.0, y);
  if (s0 >= sumLo && s0 <= sumHi) return y;  // sum constraint slack, nu = 0

  // One side of the interval is active; solve sum_i y_i(nu) = target on the
  // nonincreasing piecewise-linear sum map.
  const double target = (s0 > sumHi) ? sumHi : sumLo;
  double nuLo, nuHi;
  if (s0 > sumHi) {
    nuLo = 0.0;
    nuHi = d[0] * (t[0] - lo[0]);
    for (std::size_t i = 1; i < n; ++i)
      nuHi = std::max(nuHi, d[i] * (t[i] - lo[i]));
  } else {
    nuHi = 0.0;
    nuLo = d[0] * (t[0] - hi[0]);
    for (std::size_t i = 1; i < n; ++i)
      nuLo = std::min(nuLo, d[i] * (t[i] - hi[i]));
  }
  // The bracket always straddles the target: the sum map hits sum(hi) at the
  // low end of the nu range and sum(lo) at the high end.
  Vector work(n);
  const double slack = 1e-9 * std::max(1.0, std::fabs(target));
  if (evalAt(nuLo, work) < target - slack || evalAt(nuHi, work) > target + slack)
    throw InternalError("separableQpSumBox: bisection bracket failure");

  long iters = 0;
  double nu = 0.5 * (nuLo + nuHi);
  const double nuScale = std::max({1.0, std::fabs(nuLo), std::fabs(nuHi)});
  for (; iters < 200; ++iters) {
    nu = 0.5 * (nuLo + nuHi);
    const double s = evalAt(nu, y);
    if (std::fabs(s - target) <= 1e-10 || (nuHi - nuLo) <= 1e-12 * nuScale)
      break;
    if (s > target) {
      nuLo = nu;
    } else {
      nuHi = nu;
    }
  }

  // Polish: freeze the clamp pattern at the bisection multiplier and solve
  // the free-coordinate equality for nu exactly.
  double freeInvD = 0.0, freeT = 0.0, fixedSum = 0.0;
  std::vector<char> state(n);  // 0 free, 1 at lo, 2 at hi
  for (std::size_t i = 0; i < n; ++i) {
    const double raw = t[i] - nu / d[i];
    const double margin =
        1e-12 * std::max({1.0, std::fabs(lo[i]), std::fabs(hi[i])});
    if (raw <= lo[i] + margin) {
      state[i] = 1;
      fixedSum += lo[i];
    } else if (raw >= hi[i] - margin) {
      state[i] = 2;
      fixedSum += hi[i];
    } else {
      state[i] = 0;
      freeInvD += 1.0 / d[i];
      freeT += t[i];
    }
  }
  if (freeInvD > 0.0) {
    const double nuStar = (freeT + fixedSum - target) / freeInvD;
    Vector polished(n);
    bool consistent = true;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double raw = t[i] - nuStar / d[i];
      if (state[i] == 1) {
        polished[i] = lo[i];
        if (raw > lo[i] + 1e-8) consistent = false;
      } else if (state[i] == 2) {
        polished[i] = hi[i];
        if (raw < hi[i] - 1e-8) consistent = false;
      } else {
        polished[i] = raw;
        if (raw < lo[i] - 1e-12 || raw > hi[i] + 1e-12) consistent = false;
      }
      s += polished[i];
    }
    if (consistent && std::fabs(s - target) <= tol * std::max(1.0, std::fabs(target))) {
      for (std::size_t i = 0; i < n; ++i)
        y[i] = clampTo(polished[i], lo[i], hi[i]);
      nu = nuStar;
    }
  }

  if (diag) {
    diag->iterations += iters;
    diag->residual = std::fabs(sum(y) - target);
  }
  return y;
}

Vector proxAffine(const Vector& c, const ProxRequest& req,
                  ProxDiagnostics* diag) {
  validateRequest(req);
  if (c.size() != req.anchor.size())
    throw ContractError("proxAffine: dimension mismatch");
  if (!allFinite(c)) throw ContractError("proxAffine: nonfinite coefficient");
  Vector p(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    p[i] = req.anchor[i] - req.lambda * c[i];
  return projectOntoSet(p, req.set, diag);
}

Vector proxDiagQuad(const Vector& delta, const ProxRequest& req,
                    ProxDiagnostics* diag) {
  validateRequest(req);
  const std::size_t n = req.anchor.size();
  if (delta.size() != n) throw ContractError("proxDiagQuad: dimension mismatch");
  Vector d(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(delta[i] >= 0.0) || !std::isfinite(delta[i]))
      throw ContractError("proxDiagQuad: weights must be finite and >= 0");
    d[i] = 1.0 + 2.0 * req.lambda * delta[i];
    t[i] = req.anchor[i] / d[i];
  }
  switch (req.set.kind()) {
    case SetKind::WholeSpace:
      return t;
    case SetKind::Box:
      return projectBox(t, req.set.lower(), req.set.upper());
    case SetKind::BoxSum:
      return separableQpSumBox(d, t, req.set.lower(), req.set.upper(),
                               req.set.sumLower(), req.set.sumUpper(), 1e-10,
                               diag);
  }
  throw InternalError("proxDiagQuad: unknown set kind");
}

double proxLog1d(double lambda, double z, double lo, double hi) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda) || !std::isfinite(z))
    throw ContractError("proxLog1d: bad lambda or z");
  if (lo > hi) throw ContractError("proxLog1d: lo > hi");

  auto phi = [&](double y) {
    const double dz = y - z;
    return 0.5 * dz * dz - lambda * std::log1p(std::max(0.0, y));
  };

  // phi is a plain quadratic on the y <= 0 branch and smooth convex on the
  // y >= 0 branch, so the clamped branch minimizers cover the interval.
  std::array<double, 2> candidates{};
  int count = 0;
  if (lo <= 0.0) candidates[count++] = clampTo(z, lo, std::min(0.0, hi));
  // Positive-branch stationary point: (y - z)(1 + y) = lambda.
  const double posLo = std::max(0.0, lo);
  if (hi >= posLo) {
    const double onePlusZ = 1.0 + z;
    const double yPlus =
        0.5 * ((z - 1.0) + std::sqrt(onePlusZ * onePlusZ + 4.0 * lambda));
    candidates[count++] = clampTo(yPlus, posLo, hi);
  }

  if (count == 0) throw InternalError("proxLog1d: empty candidate set");
  std::sort(candidates.begin(), candidates.begin() + count);
  double best = candidates[0];
  double bestVal = phi(best);
  for (int i = 1; i < count; ++i) {
    const double v = phi(candidates[i]);
    if (v < bestVal) {  // ties keep the smaller y
      best = candidates[i];
      bestVal = v;
    }
  }
  return best;
}

namespace {

// Gradient of lambda * f_i(x, .) + 1/2 ||. - anchor||^2 for the two
// black-box-capable tags.
struct GenericObjective {
  const ProxRequest& req;
  const Matrix* Q = nullptr;
  const GenericSmoothProx* smooth = nullptr;
  const Vector* x = nullptr;
  double smoothnessBound = 0.0;

  Vector gradient(const Vector& y) const {
    Vector g = Q ? matVec(*Q, y) : smooth->gradient(*x, y);
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = req.lambda * g[i] + (y[i] - req.anchor[i]);
    return g;
  }
};

}  // namespace

Vector proxGeneric(const ProxSpec& spec, const Vector& x,
                   const ProxRequest& req, const GenericProxOptions& opts,
                   ProxDiagnostics* diag) {
  validateRequest(req);
  GenericObjective obj{req};
  obj.x = &x;
  if (const auto* gq = std::get_if<GeneralQuadraticProx>(&spec)) {
    if (!isSquare(gq->Q) || gq->Q.size() != req.anchor.size())
      throw ContractError("proxGeneric: Q dimension mismatch");
    obj.Q = &gq->Q;
    obj.smoothnessBound = gq->smoothnessBound;
  } else if (const auto* gs = std::get_if<GenericSmoothProx>(&spec)) {
    if (!gs->gradient) throw ContractError("proxGeneric: missing gradient");
    obj.smooth = gs;
    obj.smoothnessBound = gs->smoothnessBound;
  } else {
    throw ContractError("proxGeneric: spec is not a generic tag");
  }
  if (!(obj.smoothnessBound >= 0.0) || !std::isfinite(obj.smoothnessBound))
    throw ContractError("proxGeneric: bad smoothness bound");

  const double step = 1.0 / (1.0 + req.lambda * obj.smoothnessBound);
  Vector y = projectOntoSet(req.anchor, req.set);
  double residual = std::numeric_limits<double>::infinity();
  for (long k = 0; k < opts.maxIter; ++k) {
    const Vector g = obj.gradient(y);
    residual = distance(y, projectOntoSet(sub(y, g), req.set));
    if (diag) {
      diag->iterations = k;
      diag->residual = residual;
    }
    if (residual <= opts.tol) return y;
    Vector trial(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) trial[i] = y[i] - step * g[i];
    y = projectOntoSet(trial, req.set);
  }
  throw ConvergenceError("proxGeneric: iteration budget exhausted", residual);
}

Vector proxStep(const SplitBifunction& F, int which, const Vector& x,
                const Vector& anchor, double lambda, const FeasibleSet& S,
                const GenericProxOptions& opts, ProxDiagnostics* diag) {
  const ProxSpec& spec = F.proxSpec(which);
  ProxRequest req{lambda, anchor, S};
  if (std::holds_alternative<ZeroProx>(spec)) {
    return projectOntoSet(anchor, S, diag);
  }
  if (std::holds_alternative<AffineProx>(spec)) {
    return proxAffine(F.diagSubgrad(which, x), req, diag);
  }
  if (const auto* dq = std::get_if<DiagonalQuadraticProx>(&spec)) {
    return proxDiagQuad(dq->delta, req, diag);
  }
  if (const auto* lb = std::get_if<SeparableLogBarrierProx>(&spec)) {
    validateRequest(req);
    if (S.kind() == SetKind::BoxSum)
      throw ContractError("proxStep: log barrier needs a separable set");
    const double scaledLambda = lambda * lb->scale;
    Vector y(anchor.size());
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < anchor.size(); ++i) {
      const double lo = S.hasBox() ? S.lower()[i] : -inf;
      const double hi = S.hasBox() ? S.upper()[i] : inf;
      y[i] = proxLog1d(scaledLambda, anchor[i], lo, hi);
    }
    return y;
  }
  return proxGeneric(spec, x, req, opts, diag);
}

}  // namespace epsplit
