#include "epsplit/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "epsplit/errors.hpp"
#include "epsplit/prox.hpp"

namespace epsplit {

namespace {

void requirePositive(const Vector& v, const char* what) {
  for (double e : v) {
    if (!(e > 0.0) || !std::isfinite(e))
      throw ContractError(std::string(what) + " must be positive and finite");
  }
}

void requireNonNegative(const Vector& v, const char* what) {
  for (double e : v) {
    if (!(e >= 0.0) || !std::isfinite(e))
      throw ContractError(std::string(what) + " must be >= 0 and finite");
  }
}

bool allEqual(const Vector& v) {
  for (double e : v) {
    if (e != v[0]) return false;
  }
  return true;
}

}  // namespace

CournotParams CournotParams::benchmarkDefaults(int n) {
  if (n < 2) throw ContractError("CournotParams: n must be >= 2");
  CournotParams p;
  p.n = n;
  p.alpha = constantVector(n, 120.0);
  p.delta = constantVector(n, 1.0);
  p.mu = constantVector(n, 30.0);
  p.xi = zeros(n);
  p.boxLo = constantVector(n, 10.0);
  p.boxHi = constantVector(n, 50.0);
  p.sigmaLo = 10.0 * n + 10.0;
  p.sigmaHi = 50.0 * n - 10.0;
  p.start = constantVector(n, 30.0);
  return p;
}

std::optional<Vector> symmetricCournotEquilibrium(const CournotParams& p) {
  if (!allEqual(p.alpha) || !allEqual(p.delta) || !allEqual(p.mu) ||
      !allEqual(p.boxLo) || !allEqual(p.boxHi))
    return std::nullopt;
  const double n = static_cast<double>(p.n);
  const double interior = (p.alpha[0] - p.mu[0]) / (p.delta[0] * (n + 1.0));
  const double sLo = std::max(p.boxLo[0], p.sigmaLo / n);
  const double sHi = std::min(p.boxHi[0], p.sigmaHi / n);
  if (sLo > sHi) return std::nullopt;
  const double s = std::min(std::max(interior, sLo), sHi);
  return constantVector(p.n, s);
}

ProblemInstance buildCournot(const CournotParams& p) {
  const std::size_t n = static_cast<std::size_t>(p.n);
  if (p.n < 2) throw ContractError("buildCournot: n must be >= 2");
  if (p.alpha.size() != n || p.delta.size() != n || p.mu.size() != n ||
      p.boxLo.size() != n || p.boxHi.size() != n)
    throw ContractError("buildCournot: parameter dimension mismatch");
  if (!p.xi.empty() && p.xi.size() != n)
    throw ContractError("buildCournot: xi dimension mismatch");
  requirePositive(p.alpha, "buildCournot: alpha");
  requirePositive(p.delta, "buildCournot: delta");
  requirePositive(p.mu, "buildCournot: mu");
  if (!p.xi.empty()) requireNonNegative(p.xi, "buildCournot: xi");

  struct Data {
    Vector delta;
    Vector muMinusAlpha;
  };
  auto data = std::make_shared<Data>();
  data->delta = p.delta;
  data->muMinusAlpha = sub(p.mu, p.alpha);

  // (Bt x)_i = delta_i * (sum_j x_j - x_i); row i of Bt is delta_i off the
  // diagonal and 0 on it.
  auto cTerm = [data](const Vector& x) {
    const double sigma = sum(x);
    Vector c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      c[i] = data->delta[i] * (sigma - x[i]) + data->muMinusAlpha[i];
    return c;
  };

  ProblemInstance inst{
      "cournot",
      SplitBifunction{},
      FeasibleSet::boxSum(p.boxLo, p.boxHi, p.sigmaLo, p.sigmaHi),
      {},
      std::nullopt,
      /*monotone=*/false,  // f(x,y) + f(y,x) = delta (||d||^2 - (sum d)^2) > 0
                           // for difference directions d with small sum
      /*paramonotone=*/false,
      std::nullopt};

  inst.bifunction.dimension = n;
  inst.bifunction.eval1 = [cTerm](const Vector& x, const Vector& y) {
    return dot(cTerm(x), sub(y, x));
  };
  inst.bifunction.eval2 = [data](const Vector& x, const Vector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += data->delta[i] * (y[i] * y[i] - x[i] * x[i]);
    return s;
  };
  inst.bifunction.diagSubgrad1 = cTerm;
  inst.bifunction.diagSubgrad2 = [data](const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      g[i] = 2.0 * data->delta[i] * x[i];
    return g;
  };
  inst.bifunction.proxSpec1 = AffineProx{};
  inst.bifunction.proxSpec2 = DiagonalQuadraticProx{p.delta};

  inst.knownSolution = symmetricCournotEquilibrium(p);
  if (p.start) {
    if (p.start->size() != n)
      throw ContractError("buildCournot: start dimension mismatch");
    inst.defaultStart = *p.start;
  } else {
    Vector mid(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (p.boxLo[i] + p.boxHi[i]);
    inst.defaultStart = projectOntoSet(mid, inst.set);
  }
  return inst;
}

ProblemInstance buildOp(const OpParams& p) {
  const std::size_t n = p.Q.size();
  if (n == 0 || !isSquare(p.Q)) throw ContractError("buildOp: Q must be square");
  if (p.boxLo.size() != n || p.boxHi.size() != n)
    throw ContractError("buildOp: box dimension mismatch");
  const double scale = std::max(1.0, matInfNorm(p.Q));
  if (!isSymmetric(p.Q, 1e-12 * scale))
    throw ContractError("buildOp: Q must be symmetric");
  if (!isPsdWithin(p.Q, 1e-8))
    throw ContractError("buildOp: Q must be positive semidefinite");

  auto Q = std::make_shared<Matrix>(p.Q);

  ProblemInstance inst{"op",
                       SplitBifunction{},
                       FeasibleSet::box(p.boxLo, p.boxHi),
                       {},
                       std::nullopt,
                       /*monotone=*/true,
                       /*paramonotone=*/true,  // optimization case
                       std::nullopt};

  inst.bifunction.dimension = n;
  inst.bifunction.eval1 = [Q](const Vector& x, const Vector& y) {
    return 0.5 * (quadForm(*Q, y) - quadForm(*Q, x));
  };
  inst.bifunction.eval2 = [](const Vector& x, const Vector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += std::log1p(std::max(0.0, x[i])) - std::log1p(std::max(0.0, y[i]));
    return s;
  };
  inst.bifunction.diagSubgrad1 = [Q](const Vector& x) { return matVec(*Q, x); };
  // Right derivative of -ln(1 + max(0, .)) for positive coordinates; the
  // smallest-norm selection 0 at and below the kink.
  inst.bifunction.diagSubgrad2 = [](const Vector& x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      g[i] = x[i] > 0.0 ? -1.0 / (1.0 + x[i]) : 0.0;
    return g;
  };
  if (isDiagonal(p.Q)) {
    Vector delta = diagonalOf(p.Q);
    for (double& d : delta) d *= 0.5;
    inst.bifunction.proxSpec1 = DiagonalQuadraticProx{std::move(delta)};
  } else {
    inst.bifunction.proxSpec1 = GeneralQuadraticProx{p.Q, matInfNorm(p.Q)};
  }
  inst.bifunction.proxSpec2 = SeparableLogBarrierProx{1.0};

  if (p.start) {
    if (p.start->size() != n)
      throw ContractError("buildOp: start dimension mismatch");
    inst.defaultStart = *p.start;
  } else {
    Vector mid(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (p.boxLo[i] + p.boxHi[i]);
    inst.defaultStart = mid;
  }
  return inst;
}

ProblemInstance buildRotation() {
  auto applyA = [](const Vector& x) { return Vector{x[1], -x[0]}; };

  ProblemInstance inst{"rotation",
                       SplitBifunction{},
                       FeasibleSet::wholeSpace(2),
                       Vector{1.0, 0.0},
                       Vector{0.0, 0.0},
                       /*monotone=*/true,
                       /*paramonotone=*/false,
                       std::nullopt};

  inst.bifunction.dimension = 2;
  inst.bifunction.eval1 = [applyA](const Vector& x, const Vector& y) {
    return dot(applyA(x), sub(y, x));
  };
  inst.bifunction.eval2 = [](const Vector&, const Vector&) { return 0.0; };
  inst.bifunction.diagSubgrad1 = applyA;
  inst.bifunction.diagSubgrad2 = [](const Vector& x) { return zeros(x.size()); };
  inst.bifunction.proxSpec1 = AffineProx{};
  inst.bifunction.proxSpec2 = ZeroProx{};
  return inst;
}

ProblemInstance buildStronglyPseudomonotone(int n, double betaModulus,
                                            double lo, double hi) {
  if (n < 1) throw ContractError("buildStronglyPseudomonotone: n must be >= 1");
  if (!(betaModulus > 0.0) || !std::isfinite(betaModulus))
    throw ContractError("buildStronglyPseudomonotone: modulus must be > 0");
  if (!(lo < 0.0) || !(hi > 0.0))
    throw ContractError(
        "buildStronglyPseudomonotone: box must contain 0 in its interior");

  const std::size_t un = static_cast<std::size_t>(n);
  ProblemInstance inst{"spm",
                       SplitBifunction{},
                       FeasibleSet::box(constantVector(un, lo),
                                        constantVector(un, hi)),
                       constantVector(un, lo + 0.9 * (hi - lo)),
                       zeros(un),
                       /*monotone=*/true,
                       /*paramonotone=*/true,
                       betaModulus};

  inst.bifunction.dimension = un;
  inst.bifunction.eval1 = [betaModulus](const Vector& x, const Vector& y) {
    return betaModulus * dot(x, sub(y, x));
  };
  inst.bifunction.eval2 = [](const Vector&, const Vector&) { return 0.0; };
  inst.bifunction.diagSubgrad1 = [betaModulus](const Vector& x) {
    return scaled(x, betaModulus);
  };
  inst.bifunction.diagSubgrad2 = [](const Vector& x) { return zeros(x.size()); };
  inst.bifunction.proxSpec1 = AffineProx{};
  inst.bifunction.proxSpec2 = ZeroProx{};
  return inst;
}

namespace {

using nlohmann::json;

Vector vectorField(const json& j, const char* key, std::size_t n,
                   std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return constantVector(n, *fallback);
    throw ContractError(std::string("problem json: missing field ") + key);
  }
  const json& v = j.at(key);
  if (v.is_number()) return constantVector(n, v.get<double>());
  Vector r = v.get<Vector>();
  if (r.size() != n)
    throw ContractError(std::string("problem json: field ") + key +
                        " has wrong length");
  return r;
}

}  // namespace

ProblemInstance problemFromJsonText(const std::string& text) {
  const json j = json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  std::optional<Vector> start;
  if (j.contains("x0")) start = j.at("x0").get<Vector>();

  if (kind == "cournot") {
    const int n = j.at("n").get<int>();
    if (n < 2) throw ContractError("problem json: cournot needs n >= 2");
    const std::size_t un = static_cast<std::size_t>(n);
    CournotParams p;
    p.n = n;
    p.alpha = vectorField(j, "alpha", un, 120.0);
    p.delta = vectorField(j, "delta", un, 1.0);
    p.mu = vectorField(j, "mu", un, 30.0);
    p.xi = vectorField(j, "xi", un, 0.0);
    p.boxLo = vectorField(j, "boxLo", un, 10.0);
    p.boxHi = vectorField(j, "boxHi", un, 50.0);
    p.sigmaLo = j.value("sigmaLo", 10.0 * n + 10.0);
    p.sigmaHi = j.value("sigmaHi", 50.0 * n - 10.0);
    p.start = start ? start : std::optional<Vector>(constantVector(un, 30.0));
    return buildCournot(p);
  }
  if (kind == "op") {
    OpParams p;
    p.Q = j.at("Q").get<Matrix>();
    const std::size_t un = p.Q.size();
    p.boxLo = vectorField(j, "boxLo", un);
    p.boxHi = vectorField(j, "boxHi", un);
    p.start = start;
    return buildOp(p);
  }
  if (kind == "rotation") {
    ProblemInstance inst = buildRotation();
    if (start) {
      if (start->size() != 2)
        throw ContractError("problem json: rotation x0 must have length 2");
      inst.defaultStart = *start;
    }
    return inst;
  }
  if (kind == "spm") {
    const int n = j.at("n").get<int>();
    const double modulus = j.value("modulus", 1.0);
    const double lo = j.value("boxLo", -1.0);
    const double hi = j.value("boxHi", 1.0);
    ProblemInstance inst = buildStronglyPseudomonotone(n, modulus, lo, hi);
    if (start) {
      if (start->size() != static_cast<std::size_t>(n))
        throw ContractError("problem json: spm x0 has wrong length");
      inst.defaultStart = *start;
    }
    return inst;
  }
  throw ContractError("problem json: unknown kind '" + kind + "'");
}

ProblemInstance loadProblemFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("loadProblemFile: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return problemFromJsonText(buf.str());
}

}  // namespace epsplit
