#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "epsplit/errors.hpp"
#include "epsplit/problems.hpp"
#include "epsplit/prox.hpp"
#include "epsplit/solver.hpp"

using namespace epsplit;

TEST_CASE("Cournot coupling matrix structure through the subgradients") {
  // With n = 2 and delta = 1: Bt = [[0,1],[1,0]], B = diag(2,2).
  const auto inst = buildCournot(CournotParams::benchmarkDefaults(2));
  const Vector g1 = inst.bifunction.diagSubgrad1(Vector{3.0, 5.0});
  // Bt x + mu - alpha = (x2 - 90, x1 - 90)
  CHECK(g1[0] == doctest::Approx(5.0 - 90.0));
  CHECK(g1[1] == doctest::Approx(3.0 - 90.0));
  const Vector g2 = inst.bifunction.diagSubgrad2(Vector{3.0, 5.0});
  CHECK(g2[0] == doctest::Approx(6.0));
  CHECK(g2[1] == doctest::Approx(10.0));
}

TEST_CASE("benchmark defaults match the standard parameterization") {
  const auto p = CournotParams::benchmarkDefaults(10);
  CHECK(p.alpha == constantVector(10, 120.0));
  CHECK(p.delta == constantVector(10, 1.0));
  CHECK(p.mu == constantVector(10, 30.0));
  CHECK(p.boxLo == constantVector(10, 10.0));
  CHECK(p.boxHi == constantVector(10, 50.0));
  CHECK(p.sigmaLo == doctest::Approx(110.0));
  CHECK(p.sigmaHi == doctest::Approx(490.0));
  REQUIRE(p.start.has_value());
  CHECK(*p.start == constantVector(10, 30.0));
}

TEST_CASE("symmetric equilibrium covers interior and quota-active cases") {
  // Interior: s = 90/(n+1).
  auto s2 = symmetricCournotEquilibrium(CournotParams::benchmarkDefaults(2));
  REQUIRE(s2.has_value());
  CHECK((*s2)[0] == doctest::Approx(30.0));
  auto s3 = symmetricCournotEquilibrium(CournotParams::benchmarkDefaults(3));
  CHECK((*s3)[0] == doctest::Approx(22.5));
  // Quota lower bound active once 90/(n+1) < sigmaLo / n.
  auto s10 = symmetricCournotEquilibrium(CournotParams::benchmarkDefaults(10));
  CHECK((*s10)[0] == doctest::Approx(11.0));
  auto s15 = symmetricCournotEquilibrium(CournotParams::benchmarkDefaults(15));
  CHECK((*s15)[0] == doctest::Approx(160.0 / 15.0));
  auto s20 = symmetricCournotEquilibrium(CournotParams::benchmarkDefaults(20));
  CHECK((*s20)[0] == doctest::Approx(10.5));

  // Asymmetric parameters carry no closed-form metadata.
  CournotParams p = CournotParams::benchmarkDefaults(2);
  p.mu[0] = 29.0;
  CHECK_FALSE(symmetricCournotEquilibrium(p).has_value());
  CHECK_FALSE(buildCournot(p).knownSolution.has_value());
}

TEST_CASE("Cournot invariant validation") {
  CournotParams p = CournotParams::benchmarkDefaults(2);
  p.delta[0] = -1.0;
  CHECK_THROWS_AS(buildCournot(p), ContractError);
  p = CournotParams::benchmarkDefaults(2);
  p.sigmaLo = 1000.0;
  p.sigmaHi = 2000.0;
  CHECK_THROWS_AS(buildCournot(p), InfeasibleError);
}

TEST_CASE("log-quadratic instance basics") {
  SUBCASE("x = y evaluates to zero") {
    OpParams p;
    p.Q = {{1.0, 0.25}, {0.25, 1.0}};
    p.boxLo = {0.0, 0.0};
    p.boxHi = {1.0, 1.0};
    const auto inst = buildOp(p);
    CHECK(evalSum(inst.bifunction, Vector{0.3, 0.7}, Vector{0.3, 0.7}) ==
          doctest::Approx(0.0));
    // diagonal subgradients: Qx and the log derivative
    const Vector g1 = inst.bifunction.diagSubgrad1(Vector{1.0, 0.0});
    CHECK(g1[0] == doctest::Approx(1.0));
    CHECK(g1[1] == doctest::Approx(0.25));
    const Vector g2 = inst.bifunction.diagSubgrad2(Vector{1.0, 0.0});
    CHECK(g2[0] == doctest::Approx(-0.5));
    CHECK(g2[1] == doctest::Approx(0.0));  // smallest-norm pick at the kink
  }
  SUBCASE("zero matrix pushes the minimizer to the upper bound") {
    OpParams p;
    p.Q = {{0.0, 0.0}, {0.0, 0.0}};
    p.boxLo = {0.0, 0.0};
    p.boxHi = {1.0, 1.0};
    const auto inst = buildOp(p);
    // phi decreases in every coordinate, so x = ones is the minimizer;
    // certified by f(1, y) >= 0 on sampled y.
    std::mt19937 rng(777);
    const Vector ones = constantVector(2, 1.0);
    for (int i = 0; i < 200; ++i) {
      const Vector y = oracles::sampleBox(rng, p.boxLo, p.boxHi);
      CHECK(evalSum(inst.bifunction, ones, y) >= -1e-12);
    }
  }
  SUBCASE("scalar quadratic has the known stationary point") {
    const double want = (-1.0 + std::sqrt(3.0)) / 2.0;  // 2x = 1/(1+x)
    const double got = oracles::gridMinimize1d(
        [](double x) { return x * x - std::log1p(std::max(0.0, x)); }, 0.0,
        2.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
    CHECK(want == doctest::Approx(0.36603).epsilon(1e-4));
  }
  SUBCASE("diagonal Q routes to the diagonal-quadratic prox tag") {
    OpParams p;
    p.Q = {{2.0, 0.0}, {0.0, 4.0}};
    p.boxLo = {0.0, 0.0};
    p.boxHi = {1.0, 1.0};
    const auto inst = buildOp(p);
    const auto* dq =
        std::get_if<DiagonalQuadraticProx>(&inst.bifunction.proxSpec1);
    REQUIRE(dq != nullptr);
    CHECK(dq->delta == Vector{1.0, 2.0});
  }
  SUBCASE("validation rejects asymmetric or indefinite matrices") {
    OpParams p;
    p.Q = {{1.0, 2.0}, {0.0, 1.0}};
    p.boxLo = {0.0, 0.0};
    p.boxHi = {1.0, 1.0};
    CHECK_THROWS_AS(buildOp(p), ContractError);
    p.Q = {{1.0, 2.0}, {2.0, 1.0}};  // eigenvalues 3 and -1
    CHECK_THROWS_AS(buildOp(p), ContractError);
  }
}

TEST_CASE("rotation instance is exactly skew") {
  const auto inst = buildRotation();
  std::mt19937 rng(778);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const Vector x{u(rng), u(rng)};
    const Vector y{u(rng), u(rng)};
    CHECK(std::fabs(evalSum(inst.bifunction, x, y) +
                    evalSum(inst.bifunction, y, x)) <= 1e-12);
  }
  CHECK_FALSE(inst.paramonotone);
  REQUIRE(inst.knownSolution.has_value());
  CHECK(*inst.knownSolution == Vector{0.0, 0.0});
}

TEST_CASE("strong instance decay identity and fixed point") {
  const double beta = 1.5;
  const auto inst = buildStronglyPseudomonotone(3, beta, -1.0, 1.0);
  std::mt19937 rng(779);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Vector x(3), y(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = u(rng);
      y[j] = u(rng);
    }
    const double lhs =
        evalSum(inst.bifunction, x, y) + evalSum(inst.bifunction, y, x);
    const double d = distance(x, y);
    CHECK(lhs == doctest::Approx(-beta * d * d).epsilon(1e-12));
    // x* = 0 solves the problem: f(0, y) = 0 >= 0.
    CHECK(evalSum(inst.bifunction, zeros(3), y) == doctest::Approx(0.0));
  }

  // One iterate from x0 is the box projection of (1 - lambda beta) x0.
  const Vector x0{0.9, -0.4, 0.2};
  auto state = initialState(inst.set, x0);
  auto [next, rec] = iterateOnce(inst.bifunction, inst.set, state, 2.0);
  for (int j = 0; j < 3; ++j) {
    const double expected = std::min(
        1.0, std::max(-1.0, (1.0 - rec.lambda * beta) * x0[j]));
    CHECK(next.x[j] == doctest::Approx(expected).epsilon(1e-14));
  }

  CHECK_THROWS_AS(buildStronglyPseudomonotone(3, 0.0, -1.0, 1.0),
                  ContractError);
  CHECK_THROWS_AS(buildStronglyPseudomonotone(3, 1.0, 0.5, 1.0),
                  ContractError);
}

TEST_CASE("problem JSON round trips through the builders") {
  SUBCASE("cournot with scalar broadcast") {
    const auto inst = problemFromJsonText(R"({
      "kind": "cournot", "n": 3, "alpha": 120, "delta": 1, "mu": 30,
      "boxLo": 10, "boxHi": 50, "sigmaLo": 40, "sigmaHi": 140
    })");
    CHECK(inst.name == "cournot");
    CHECK(inst.set.dimension() == 3);
    REQUIRE(inst.knownSolution.has_value());
    CHECK((*inst.knownSolution)[0] == doctest::Approx(22.5));
  }
  SUBCASE("cournot defaults fill missing fields") {
    const auto inst = problemFromJsonText(R"({"kind": "cournot", "n": 4})");
    CHECK(inst.set.sumLower() == doctest::Approx(50.0));
    CHECK(inst.set.sumUpper() == doctest::Approx(190.0));
    CHECK(inst.defaultStart == constantVector(4, 30.0));
  }
  SUBCASE("op with explicit matrix") {
    const auto inst = problemFromJsonText(R"({
      "kind": "op", "Q": [[2.0]], "boxLo": [0.0], "boxHi": [2.0],
      "x0": [1.0]
    })");
    CHECK(inst.name == "op");
    CHECK(inst.defaultStart == Vector{1.0});
  }
  SUBCASE("rotation and spm") {
    CHECK(problemFromJsonText(R"({"kind": "rotation"})").name == "rotation");
    const auto spm = problemFromJsonText(
        R"({"kind": "spm", "n": 5, "modulus": 2.0, "boxLo": -2, "boxHi": 2})");
    CHECK(spm.set.dimension() == 5);
    REQUIRE(spm.strongPseudomonotoneModulus.has_value());
    CHECK(*spm.strongPseudomonotoneModulus == doctest::Approx(2.0));
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(problemFromJsonText(R"({"kind": "nope"})"), ContractError);
    CHECK_THROWS_AS(problemFromJsonText(R"({"kind": "cournot", "n": 1})"),
                    ContractError);
  }
}
