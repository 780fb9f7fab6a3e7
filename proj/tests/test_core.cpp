#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "epsplit/bifunction.hpp"
#include "epsplit/errors.hpp"
#include "epsplit/feasible_set.hpp"
#include "epsplit/problems.hpp"

using namespace epsplit;

namespace {

Vector samplePoint(std::mt19937& rng, const FeasibleSet& S) {
  if (S.kind() == SetKind::WholeSpace) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    Vector x(S.dimension());
    for (double& e : x) e = u(rng);
    return x;
  }
  if (S.kind() == SetKind::Box)
    return oracles::sampleBox(rng, S.lower(), S.upper());
  return oracles::sampleBoxSum(rng, S.lower(), S.upper(), S.sumLower(),
                               S.sumUpper());
}

std::vector<ProblemInstance> builtins() {
  std::vector<ProblemInstance> all;
  all.push_back(buildCournot(CournotParams::benchmarkDefaults(2)));
  all.push_back(buildCournot(CournotParams::benchmarkDefaults(5)));
  all.push_back(buildRotation());
  all.push_back(buildStronglyPseudomonotone(3, 1.5, -1.0, 2.0));
  OpParams op;
  op.Q = {{2.0, 0.5}, {0.5, 1.0}};
  op.boxLo = {0.0, 0.0};
  op.boxHi = {2.0, 2.0};
  all.push_back(buildOp(op));
  return all;
}

}  // namespace

TEST_CASE("evalSum on the named instances") {
  const auto cournot = buildCournot(CournotParams::benchmarkDefaults(2));
  const Vector x{30.0, 30.0};
  CHECK(evalSum(cournot.bifunction, x, x) == 0.0);
  // One-unit deviation of firm 1: affine part -60, quadratic part +61.
  CHECK(evalSum(cournot.bifunction, x, Vector{31.0, 30.0}) ==
        doctest::Approx(1.0));

  const auto rot = buildRotation();
  CHECK(evalSum(rot.bifunction, Vector{1.0, 0.0}, Vector{0.0, 0.0}) ==
        doctest::Approx(0.0));
}

TEST_CASE("evalSum rejects bad input") {
  const auto rot = buildRotation();
  CHECK_THROWS_AS(evalSum(rot.bifunction, Vector{1.0}, Vector{0.0, 0.0}),
                  ContractError);
  CHECK_THROWS_AS(
      evalSum(rot.bifunction, Vector{1.0, std::nan("")}, Vector{0.0, 0.0}),
      ContractError);
}

TEST_CASE("containsPoint across the set variants") {
  const auto box = FeasibleSet::box(Vector{10.0, 10.0}, Vector{50.0, 50.0});
  CHECK(containsPoint(box, Vector{30.0, 30.0}, 0.0));
  CHECK_FALSE(containsPoint(box, Vector{9.0, 30.0}, 0.0));
  CHECK(containsPoint(box, Vector{9.9999999999, 30.0}, 1e-6));

  const auto boxSum =
      FeasibleSet::boxSum(Vector{10.0, 10.0}, Vector{50.0, 50.0}, 30.0, 90.0);
  CHECK_FALSE(containsPoint(boxSum, Vector{10.0, 10.0}, 0.0));  // sum 20 < 30
  CHECK(containsPoint(boxSum, Vector{15.0, 15.0}, 0.0));

  const auto whole = FeasibleSet::wholeSpace(2);
  CHECK(containsPoint(whole, Vector{1e9, -1e9}, 0.0));
}

TEST_CASE("feasible set constructors enforce invariants") {
  CHECK_THROWS_AS(FeasibleSet::box(Vector{1.0}, Vector{0.0}), ContractError);
  CHECK_THROWS_AS(FeasibleSet::boxSum(Vector{0.0}, Vector{1.0}, 2.0, 3.0),
                  InfeasibleError);
  CHECK_THROWS_AS(FeasibleSet::boxSum(Vector{0.0}, Vector{1.0}, 1.0, 0.5),
                  ContractError);
}

TEST_CASE("f1 and f2 vanish on the diagonal") {
  std::mt19937 rng(20240101);
  for (const auto& inst : builtins()) {
    for (int trial = 0; trial < 200; ++trial) {
      const Vector x = samplePoint(rng, inst.set);
      CHECK(std::fabs(inst.bifunction.eval1(x, x)) <= 1e-12);
      CHECK(std::fabs(inst.bifunction.eval2(x, x)) <= 1e-12);
    }
  }
}

TEST_CASE("diagonal subgradients satisfy the subgradient inequality") {
  std::mt19937 rng(20240202);
  for (const auto& inst : builtins()) {
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = samplePoint(rng, inst.set);
      const Vector y = samplePoint(rng, inst.set);
      for (int which : {1, 2}) {
        const Vector g = inst.bifunction.diagSubgrad(which, x);
        const double gap =
            inst.bifunction.evalComponent(which, x, y) - dot(g, sub(y, x));
        worst = std::min(worst, gap);
      }
    }
    CHECK(worst >= -1e-10);
  }
}

TEST_CASE("monotonicity sampling on the monotone built-ins") {
  std::mt19937 rng(20240303);
  for (const auto& inst : builtins()) {
    if (!inst.monotone) continue;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = samplePoint(rng, inst.set);
      const Vector y = samplePoint(rng, inst.set);
      worst = std::max(worst, evalSum(inst.bifunction, x, y) +
                                  evalSum(inst.bifunction, y, x));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("the Cournot bifunction is not monotone but its equilibrium is dual") {
  // f(x,y) + f(y,x) = delta (||d||^2 - (sum d)^2) with d = y - x, which is
  // positive whenever the deviation directions of the firms roughly cancel.
  const auto inst = buildCournot(CournotParams::benchmarkDefaults(2));
  const Vector x{30.0, 30.0};
  const Vector y{31.0, 29.0};
  CHECK(evalSum(inst.bifunction, x, y) + evalSum(inst.bifunction, y, x) ==
        doctest::Approx(2.0));

  // The symmetric equilibrium still satisfies f(y, x*) <= 0 for all feasible
  // y, which is what the distance-decay monitors rely on.
  std::mt19937 rng(20240404);
  for (int n : {2, 3, 10, 20}) {
    const auto c = buildCournot(CournotParams::benchmarkDefaults(n));
    REQUIRE(c.knownSolution.has_value());
    const Vector& xstar = *c.knownSolution;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector y2 = samplePoint(rng, c.set);
      worst = std::max(worst, evalSum(c.bifunction, y2, xstar));
    }
    CHECK(worst <= 1e-10);
  }
}
