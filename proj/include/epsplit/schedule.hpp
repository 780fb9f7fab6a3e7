#pragma once

#include <functional>
#include <string>

#include "epsplit/vec.hpp"

namespace epsplit {

// The beta_k sequence driving the step-size rule. The shipped family is
// HarmonicScale(c): beta_k = c / (k + 1), which is divergent in sum and
// square-summable. Custom schedules are accepted through betaAt(); whether a
// custom sequence satisfies those summability conditions is the caller's
// responsibility.
class StepSchedule {
 public:
  static StepSchedule harmonicScale(double c);
  static StepSchedule custom(std::function<double(long)> betaAt,
                             std::string descriptor);

  // beta_k for k >= 0; always positive and finite.
  double betaAt(long k) const;
  const std::string& descriptor() const { return descriptor_; }

 private:
  StepSchedule(std::function<double(long)> fn, std::string descriptor);
  std::function<double(long)> fn_;
  std::string descriptor_;
};

struct StepSizes {
  double eta;
  double lambda;
};

// eta = max{beta, ||g1||, ||g2||}, lambda = beta / eta. Requires beta > 0 and
// finite inputs; guarantees 0 < lambda <= 1.
StepSizes stepSize(double beta, const Vector& g1, const Vector& g2);

}  // namespace epsplit
