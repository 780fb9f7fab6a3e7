#pragma once

#include <cstddef>
#include <functional>
#include <variant>

#include "epsplit/vec.hpp"

namespace epsplit {

// Structure tags describing f_i(x, .) so the prox layer can pick an exact
// subproblem solver. The tag is a promise about the shape of the component:
//
//   AffineProx                f_i(x, y) = <c(x), y - x>, c(x) = diagSubgrad_i(x)
//   DiagonalQuadraticProx     f_i(x, y) = sum_j delta_j (y_j^2 - x_j^2)
//   GeneralQuadraticProx      f_i(x, y) = 1/2 y'Qy - 1/2 x'Qx
//   SeparableLogBarrierProx   f_i(x, y) = scale * sum_j [ln(1 + max(0, x_j))
//                                                       - ln(1 + max(0, y_j))]
//   ZeroProx                  f_i == 0
//   GenericSmoothProx         black box with gradient of y -> f_i(x, y) and a
//                             Lipschitz bound on that gradient
struct AffineProx {};
struct DiagonalQuadraticProx {
  Vector delta;  // delta_j >= 0
};
struct GeneralQuadraticProx {
  Matrix Q;
  double smoothnessBound;  // upper bound on ||Q||_2
};
struct SeparableLogBarrierProx {
  double scale = 1.0;
};
struct ZeroProx {};
struct GenericSmoothProx {
  std::function<Vector(const Vector& x, const Vector& y)> gradient;
  double smoothnessBound;
};

using ProxSpec =
    std::variant<AffineProx, DiagonalQuadraticProx, GeneralQuadraticProx,
                 SeparableLogBarrierProx, ZeroProx, GenericSmoothProx>;

// A bifunction split as f = f1 + f2 with f_i(x, x) = 0, exposing evaluation,
// a single-valued selection from the diagonal subdifferential d2 f_i(x, x),
// and the prox structure tags. Instances are immutable once built and all
// members are pure, so they are safe to share across threads.
struct SplitBifunction {
  std::size_t dimension = 0;
  std::function<double(const Vector& x, const Vector& y)> eval1;
  std::function<double(const Vector& x, const Vector& y)> eval2;
  std::function<Vector(const Vector& x)> diagSubgrad1;
  std::function<Vector(const Vector& x)> diagSubgrad2;
  ProxSpec proxSpec1 = ZeroProx{};
  ProxSpec proxSpec2 = ZeroProx{};

  double evalComponent(int which, const Vector& x, const Vector& y) const;
  Vector diagSubgrad(int which, const Vector& x) const;
  const ProxSpec& proxSpec(int which) const;
};

// f(x, y) = f1(x, y) + f2(x, y). Throws ContractError on dimension mismatch
// or nonfinite input.
double evalSum(const SplitBifunction& F, const Vector& x, const Vector& y);

}  // namespace epsplit
