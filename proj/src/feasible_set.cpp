#include "epsplit/feasible_set.hpp"

#include <cmath>

#include "epsplit/errors.hpp"

namespace epsplit {

FeasibleSet::FeasibleSet(SetKind kind, std::size_t n, Vector lo, Vector hi,
                         double sumLo, double sumHi)
    : kind_(kind),
      n_(n),
      lo_(std::move(lo)),
      hi_(std::move(hi)),
      sumLo_(sumLo),
      sumHi_(sumHi) {}

FeasibleSet FeasibleSet::wholeSpace(std::size_t n) {
  if (n < 1) throw ContractError("FeasibleSet: dimension must be >= 1");
  return FeasibleSet(SetKind::WholeSpace, n, {}, {}, 0.0, 0.0);
}

namespace {
void validateBox(const Vector& lo, const Vector& hi) {
  if (lo.empty() || lo.size() != hi.size())
    throw ContractError("FeasibleSet: box bounds empty or mismatched");
  if (!allFinite(lo) || !allFinite(hi))
    throw ContractError("FeasibleSet: box bounds must be finite");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw ContractError("FeasibleSet: lo > hi");
  }
}
}  // namespace

FeasibleSet FeasibleSet::box(Vector lo, Vector hi) {
  validateBox(lo, hi);
  const std::size_t n = lo.size();
  return FeasibleSet(SetKind::Box, n, std::move(lo), std::move(hi), 0.0, 0.0);
}

FeasibleSet FeasibleSet::boxSum(Vector lo, Vector hi, double sumLo,
                                double sumHi) {
  validateBox(lo, hi);
  if (!std::isfinite(sumLo) || !std::isfinite(sumHi) || sumLo > sumHi)
    throw ContractError("FeasibleSet: bad sum interval");
  if (sum(lo) > sumHi || sum(hi) < sumLo)
    throw InfeasibleError("FeasibleSet: box and sum interval do not intersect");
  const std::size_t n = lo.size();
  return FeasibleSet(SetKind::BoxSum, n, std::move(lo), std::move(hi), sumLo,
                     sumHi);
}

const Vector& FeasibleSet::lower() const {
  if (kind_ == SetKind::WholeSpace)
    throw ContractError("FeasibleSet: whole space has no bounds");
  return lo_;
}

const Vector& FeasibleSet::upper() const {
  if (kind_ == SetKind::WholeSpace)
    throw ContractError("FeasibleSet: whole space has no bounds");
  return hi_;
}

double FeasibleSet::sumLower() const {
  if (kind_ != SetKind::BoxSum)
    throw ContractError("FeasibleSet: no sum constraint");
  return sumLo_;
}

double FeasibleSet::sumUpper() const {
  if (kind_ != SetKind::BoxSum)
    throw ContractError("FeasibleSet: no sum constraint");
  return sumHi_;
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  if (x.size() != n_) throw ContractError("contains: dimension mismatch");
  if (!allFinite(x)) throw ContractError("contains: nonfinite point");
  if (tol < 0.0) throw ContractError("contains: negative tolerance");
  if (kind_ == SetKind::WholeSpace) return true;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
  }
  if (kind_ == SetKind::BoxSum) {
    const double s = sum(x);
    if (s < sumLo_ - tol || s > sumHi_ + tol) return false;
  }
  return true;
}

bool containsPoint(const FeasibleSet& S, const Vector& x, double tol) {
  return S.contains(x, tol);
}

}  // namespace epsplit
