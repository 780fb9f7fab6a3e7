#include "epsplit/vec.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "epsplit/errors.hpp"

namespace epsplit {

bool allFinite(const Vector& v) {
  for (double e : v) {
    if (!std::isfinite(e)) return false;
  }
  return true;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ContractError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

double distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ContractError("distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double sum(const Vector& v) {
  double s = 0.0;
  for (double e : v) s += e;
  return s;
}

Vector constantVector(std::size_t n, double value) { return Vector(n, value); }

Vector zeros(std::size_t n) { return Vector(n, 0.0); }

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ContractError("add: dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ContractError("sub: dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scaled(const Vector& v, double s) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Vector matVec(const Matrix& Q, const Vector& x) {
  Vector r(Q.size(), 0.0);
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (Q[i].size() != x.size())
      throw ContractError("matVec: dimension mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += Q[i][j] * x[j];
    r[i] = s;
  }
  return r;
}

double quadForm(const Matrix& Q, const Vector& x) { return dot(x, matVec(Q, x)); }

double matInfNorm(const Matrix& Q) {
  double best = 0.0;
  for (const auto& row : Q) {
    double s = 0.0;
    for (double e : row) s += std::fabs(e);
    best = std::max(best, s);
  }
  return best;
}

bool isSquare(const Matrix& Q) {
  for (const auto& row : Q) {
    if (row.size() != Q.size()) return false;
  }
  return true;
}

bool isSymmetric(const Matrix& Q, double tol) {
  if (!isSquare(Q)) return false;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    for (std::size_t j = i + 1; j < Q.size(); ++j) {
      if (std::fabs(Q[i][j] - Q[j][i]) > tol) return false;
    }
  }
  return true;
}

bool isDiagonal(const Matrix& Q) {
  if (!isSquare(Q)) return false;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    for (std::size_t j = 0; j < Q.size(); ++j) {
      if (i != j && Q[i][j] != 0.0) return false;
    }
  }
  return true;
}

Vector diagonalOf(const Matrix& Q) {
  Vector d(Q.size());
  for (std::size_t i = 0; i < Q.size(); ++i) d[i] = Q[i][i];
  return d;
}

bool isPsdWithin(const Matrix& Q, double shift) {
  if (!isSquare(Q)) return false;
  const std::size_t n = Q.size();
  // In-place Cholesky of Q + shift*I; failure of a pivot means the shifted
  // matrix is not positive definite.
  Matrix L(n, Vector(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double diag = Q[j][j] + shift;
    for (std::size_t k = 0; k < j; ++k) diag -= L[j][k] * L[j][k];
    if (!(diag > 0.0)) return false;
    L[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = Q[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      L[i][j] = s / L[j][j];
    }
  }
  return true;
}

std::string formatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw InternalError("formatDouble failed");
  return std::string(buf, res.ptr);
}

double parseDouble(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    // from_chars rejects a leading '+' and some inf/nan spellings; fall back.
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
      throw ContractError("parseDouble: bad number '" + s + "'");
  }
  return v;
}

}  // namespace epsplit
