#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clampTo(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

double qpObjective(const Vector& d, const Vector& t, const Vector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double diff = y[i] - t[i];
    s += 0.5 * d[i] * diff * diff;
  }
  return s;
}

}  // namespace

namespace {

// Zooming lattice search over the first m coordinates; the remaining ones (at
// most one) are filled in by `complete`, which returns false for infeasible
// points. Merges the best feasible full point this search finds into
// (best, bestVal); the zoom is guided by this search's own running best.
void zoomSearch(
    std::size_t m, const Vector& d, const Vector& t, const Vector& lo,
    const Vector& hi,
    const std::function<bool(const Vector& partial, Vector& full)>& complete,
    Vector& best, double& bestVal) {
  const int perAxis = 24;
  Vector centerLo(lo.begin(), lo.begin() + m);
  Vector centerHi(hi.begin(), hi.begin() + m);
  Vector ownBest, ownBestPartial;
  double ownBestVal = kInf;

  for (int round = 0; round < 20; ++round) {
    Vector partial(m), full;
    std::vector<int> idx(m, 0);
    bool done = false;
    while (!done) {
      for (std::size_t i = 0; i < m; ++i) {
        const double frac = static_cast<double>(idx[i]) / (perAxis - 1);
        partial[i] = centerLo[i] + frac * (centerHi[i] - centerLo[i]);
      }
      if (complete(partial, full)) {
        const double val = qpObjective(d, t, full);
        if (val < ownBestVal) {
          ownBestVal = val;
          ownBest = full;
          ownBestPartial = partial;
        }
      }
      std::size_t axis = 0;
      while (axis < m) {
        if (++idx[axis] < perAxis) break;
        idx[axis] = 0;
        ++axis;
      }
      done = axis == m || m == 0;
    }
    if (m == 0 || ownBestPartial.empty()) break;
    for (std::size_t i = 0; i < m; ++i) {
      const double width = (centerHi[i] - centerLo[i]) / (perAxis - 1);
      centerLo[i] = std::max(lo[i], ownBestPartial[i] - 2.0 * width);
      centerHi[i] = std::min(hi[i], ownBestPartial[i] + 2.0 * width);
    }
  }
  if (ownBestVal < bestVal) {
    bestVal = ownBestVal;
    best = ownBest;
  }
}

}  // namespace

Vector gridQpSumBox(const Vector& d, const Vector& t, const Vector& lo,
                    const Vector& hi, double sumLo, double sumHi) {
  const std::size_t n = d.size();
  if (n > 3) throw std::invalid_argument("gridQpSumBox: n too large");

  Vector best;
  double bestVal = kInf;

  // Interior case: full-dimension lattice with feasibility filter.
  zoomSearch(n, d, t, lo, hi,
             [&](const Vector& partial, Vector& full) {
               const double s = epsplit::sum(partial);
               if (s < sumLo - 1e-12 || s > sumHi + 1e-12) return false;
               full = partial;
               return true;
             },
             best, bestVal);

  // Sum-active cases: search the hyperplane sum y = T with the last
  // coordinate eliminated, which the axis-aligned lattice cannot track.
  for (double target : {sumLo, sumHi}) {
    zoomSearch(n - 1, d, t, lo, hi,
               [&](const Vector& partial, Vector& full) {
                 const double rest = target - epsplit::sum(partial);
                 if (rest < lo[n - 1] - 1e-12 || rest > hi[n - 1] + 1e-12)
                   return false;
                 full = partial;
                 full.push_back(
                     std::min(std::max(rest, lo[n - 1]), hi[n - 1]));
                 return true;
               },
               best, bestVal);
  }

  if (best.empty())
    throw std::runtime_error("gridQpSumBox: no feasible lattice point");
  return best;
}

Vector activeSetQpSumBox(const Vector& d, const Vector& t, const Vector& lo,
                         const Vector& hi, double sumLo, double sumHi) {
  const std::size_t n = d.size();
  if (n > 6) throw std::invalid_argument("activeSetQpSumBox: n too large");
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= 3;

  Vector best;
  double bestVal = kInf;
  const double tol = 1e-9;

  // sumCase: 0 -> interval slack (nu = 0), 1 -> sum = sumLo (nu <= 0),
  // 2 -> sum = sumHi (nu >= 0).
  for (int sumCase = 0; sumCase < 3; ++sumCase) {
    for (std::size_t mask = 0; mask < combos; ++mask) {
      std::vector<int> state(n);  // 0 free, 1 at lo, 2 at hi
      std::size_t m = mask;
      for (std::size_t i = 0; i < n; ++i) {
        state[i] = static_cast<int>(m % 3);
        m /= 3;
      }

      double fixedSum = 0.0, freeT = 0.0, freeInvD = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (state[i] == 1) fixedSum += lo[i];
        if (state[i] == 2) fixedSum += hi[i];
        if (state[i] == 0) {
          freeT += t[i];
          freeInvD += 1.0 / d[i];
        }
      }

      double nu;
      if (sumCase == 0) {
        nu = 0.0;
      } else {
        const double target = sumCase == 1 ? sumLo : sumHi;
        if (freeInvD == 0.0) {
          nu = 0.0;  // all coordinates fixed; only feasibility matters
          if (std::fabs(fixedSum - target) > tol) continue;
        } else {
          nu = (freeT + fixedSum - target) / freeInvD;
        }
        if (sumCase == 1 && nu > tol) continue;
        if (sumCase == 2 && nu < -tol) continue;
      }

      Vector y(n);
      bool ok = true;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (state[i] == 0) {
          y[i] = t[i] - nu / d[i];
          if (y[i] < lo[i] - tol || y[i] > hi[i] + tol) ok = false;
        } else if (state[i] == 1) {
          y[i] = lo[i];
          // multiplier for the lower bound: d_i (lo - t_i) + nu >= 0
          if (d[i] * (lo[i] - t[i]) + nu < -tol) ok = false;
        } else {
          y[i] = hi[i];
          if (d[i] * (hi[i] - t[i]) + nu > tol) ok = false;
        }
        s += y[i];
      }
      if (!ok) continue;
      if (sumCase == 0 && (s < sumLo - tol || s > sumHi + tol)) continue;
      if (sumCase == 1 && std::fabs(s - sumLo) > 1e-7) continue;
      if (sumCase == 2 && std::fabs(s - sumHi) > 1e-7) continue;

      const double val = qpObjective(d, t, y);
      if (val < bestVal) {
        bestVal = val;
        best = y;
      }
    }
  }
  if (best.empty())
    throw std::runtime_error("activeSetQpSumBox: no KKT-consistent candidate");
  return best;
}

double gridMinimize1d(const std::function<double(double)>& f, double lo,
                      double hi) {
  double a = lo, b = hi;
  double best = lo, bestVal = kInf;
  const int points = 400;
  for (int round = 0; round < 14; ++round) {
    for (int i = 0; i <= points; ++i) {
      const double y = a + (b - a) * i / points;
      const double v = f(y);
      if (v < bestVal) {
        bestVal = v;
        best = y;
      }
    }
    const double width = (b - a) / points;
    a = std::max(lo, best - 2.0 * width);
    b = std::min(hi, best + 2.0 * width);
  }
  return best;
}

double gridLogProx(double lambda, double z, double lo, double hi) {
  auto phi = [&](double y) {
    const double dz = y - z;
    return 0.5 * dz * dz - lambda * std::log1p(std::max(0.0, y));
  };
  return gridMinimize1d(phi, lo, hi);
}

double logQuadObjective(const Matrix& Q, const Vector& x) {
  double s = 0.5 * epsplit::quadForm(Q, x);
  for (double e : x) s -= std::log1p(std::max(0.0, e));
  return s;
}

Vector projectedGradientReference(const Matrix& Q, const Vector& lo,
                                  const Vector& hi, const Vector& start,
                                  long iterations) {
  const double L = epsplit::matInfNorm(Q) + 1.0;
  const double step = 1.0 / L;
  Vector x(start.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = clampTo(start[i], lo[i], hi[i]);
  for (long k = 0; k < iterations; ++k) {
    Vector g = epsplit::matVec(Q, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) g[i] -= 1.0 / (1.0 + x[i]);
      x[i] = clampTo(x[i] - step * g[i], lo[i], hi[i]);
    }
  }
  return x;
}

Vector sampleBox(std::mt19937& rng, const Vector& lo, const Vector& hi) {
  Vector x(lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uniform_real_distribution<double> u(lo[i], hi[i]);
    x[i] = u(rng);
  }
  return x;
}

Vector sampleBoxSum(std::mt19937& rng, const Vector& lo, const Vector& hi,
                    double sumLo, double sumHi) {
  for (int tries = 0; tries < 100000; ++tries) {
    Vector x = sampleBox(rng, lo, hi);
    const double s = epsplit::sum(x);
    if (s >= sumLo && s <= sumHi) return x;
  }
  throw std::runtime_error("sampleBoxSum: rejection sampling failed");
}

}  // namespace oracles
