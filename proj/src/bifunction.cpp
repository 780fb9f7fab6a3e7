#include "epsplit/bifunction.hpp"

#include "epsplit/errors.hpp"

namespace epsplit {

double SplitBifunction::evalComponent(int which, const Vector& x,
                                      const Vector& y) const {
  if (which != 1 && which != 2)
    throw ContractError("evalComponent: which must be 1 or 2");
  return which == 1 ? eval1(x, y) : eval2(x, y);
}

Vector SplitBifunction::diagSubgrad(int which, const Vector& x) const {
  if (which != 1 && which != 2)
    throw ContractError("diagSubgrad: which must be 1 or 2");
  return which == 1 ? diagSubgrad1(x) : diagSubgrad2(x);
}

const ProxSpec& SplitBifunction::proxSpec(int which) const {
  if (which != 1 && which != 2)
    throw ContractError("proxSpec: which must be 1 or 2");
  return which == 1 ? proxSpec1 : proxSpec2;
}

double evalSum(const SplitBifunction& F, const Vector& x, const Vector& y) {
  if (x.size() != F.dimension || y.size() != F.dimension)
    throw ContractError("evalSum: dimension mismatch");
  if (!allFinite(x) || !allFinite(y))
    throw ContractError("evalSum: nonfinite input");
  return F.eval1(x, y) + F.eval2(x, y);
}

}  // namespace epsplit
