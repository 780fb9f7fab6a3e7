#pragma once

#include <cstddef>

#include "epsplit/vec.hpp"

namespace epsplit {

// Default additive tolerance for containment queries. One order looser than
// the tightest subsolver tolerance (1e-10) so exact-solver outputs always
// test as feasible.
inline constexpr double kContainmentTol = 1e-9;

enum class SetKind { WholeSpace, Box, BoxSum };

// Closed convex constraint region in one of three shapes:
//   WholeSpace(n)                         no constraint
//   Box(lo, hi)                           lo <= x <= hi componentwise
//   BoxSum(lo, hi, sumLo, sumHi)          box plus sumLo <= sum_i x_i <= sumHi
// Immutable after construction; constructors validate nonemptiness.
class FeasibleSet {
 public:
  static FeasibleSet wholeSpace(std::size_t n);
  static FeasibleSet box(Vector lo, Vector hi);
  static FeasibleSet boxSum(Vector lo, Vector hi, double sumLo, double sumHi);

  SetKind kind() const { return kind_; }
  std::size_t dimension() const { return n_; }
  bool hasBox() const { return kind_ != SetKind::WholeSpace; }
  bool hasSum() const { return kind_ == SetKind::BoxSum; }
  const Vector& lower() const;
  const Vector& upper() const;
  double sumLower() const;
  double sumUpper() const;

  bool contains(const Vector& x, double tol = kContainmentTol) const;

 private:
  FeasibleSet(SetKind kind, std::size_t n, Vector lo, Vector hi, double sumLo,
              double sumHi);

  SetKind kind_;
  std::size_t n_;
  Vector lo_, hi_;
  double sumLo_ = 0.0, sumHi_ = 0.0;
};

bool containsPoint(const FeasibleSet& S, const Vector& x,
                   double tol = kContainmentTol);

}  // namespace epsplit
