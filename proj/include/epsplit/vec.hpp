#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace epsplit {

// Finite-dimensional dense vectors and small dense matrices. Problem sizes
// here are tiny (n <= a few hundred), so plain std::vector is plenty.
using Vector = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

bool allFinite(const Vector& v);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);  // Euclidean
double distance(const Vector& a, const Vector& b);
double sum(const Vector& v);

Vector constantVector(std::size_t n, double value);
Vector zeros(std::size_t n);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scaled(const Vector& v, double s);

Vector matVec(const Matrix& Q, const Vector& x);
double quadForm(const Matrix& Q, const Vector& x);  // x'Qx
double matInfNorm(const Matrix& Q);                 // max absolute row sum
bool isSquare(const Matrix& Q);
bool isSymmetric(const Matrix& Q, double tol);
bool isDiagonal(const Matrix& Q);
Vector diagonalOf(const Matrix& Q);

// True when Q + shift*I admits a Cholesky factorization, i.e. the smallest
// eigenvalue of Q is >= -shift up to roundoff.
bool isPsdWithin(const Matrix& Q, double shift);

// Shortest decimal representation that parses back to the identical double.
std::string formatDouble(double v);
double parseDouble(const std::string& s);

}  // namespace epsplit
