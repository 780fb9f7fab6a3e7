#include "epsplit/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "epsplit/errors.hpp"

namespace epsplit {

StepSchedule::StepSchedule(std::function<double(long)> fn,
                           std::string descriptor)
    : fn_(std::move(fn)), descriptor_(std::move(descriptor)) {}

StepSchedule StepSchedule::harmonicScale(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw ContractError("StepSchedule: harmonic scale must be positive");
  std::string desc = formatDouble(c) + "/(k+1)";
  return StepSchedule([c](long k) { return c / static_cast<double>(k + 1); },
                      std::move(desc));
}

StepSchedule StepSchedule::custom(std::function<double(long)> betaAt,
                                  std::string descriptor) {
  if (!betaAt) throw ContractError("StepSchedule: empty callable");
  return StepSchedule(std::move(betaAt), std::move(descriptor));
}

double StepSchedule::betaAt(long k) const {
  if (k < 0) throw ContractError("betaAt: negative index");
  const double b = fn_(k);
  if (!(b > 0.0) || !std::isfinite(b))
    throw ContractError("betaAt: schedule produced a nonpositive value");
  return b;
}

StepSizes stepSize(double beta, const Vector& g1, const Vector& g2) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ContractError("stepSize: beta must be positive and finite");
  if (!allFinite(g1) || !allFinite(g2))
    throw ContractError("stepSize: nonfinite subgradient");
  const double eta = std::max({beta, norm(g1), norm(g2)});
  return StepSizes{eta, beta / eta};
}

}  // namespace epsplit
