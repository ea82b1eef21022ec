#pragma once

#include <vector>

#include "barypade/scalar.hpp"

namespace barypade {

/// Dense row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, mpfr_prec_t prec)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Complex(prec)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& at(int i, int j) { return e_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)]; }
  const Complex& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
  }
  mpfr_prec_t prec() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Real& s);
  friend Matrix operator*(const Matrix& a, const Complex& s);

  std::vector<Complex> mul_vec(const std::vector<Complex>& v) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Complex> e_;
};

struct NullspaceResult {
  int rank = 0;
  std::vector<std::vector<Complex>> basis;  // unnormalized
  std::vector<Real> pivot_mods;             // pivot magnitudes in elimination order
};

/// Solves V d = rhs where V is the Vandermonde interpolation matrix of the
/// given nodes (row i = powers of nodes[i]); d are the monomial coefficients
/// of the polynomial interpolating rhs at the nodes. Newton divided
/// differences with progressive expansion, O(n^2).
/// Throws node_collision when two nodes come within the separation threshold
/// 2^(-prec/4) * (1 + max|node|).
std::vector<Complex> vandermonde_solve(const std::vector<Complex>& nodes,
                                       const std::vector<Complex>& rhs);

/// Full-pivot Gaussian elimination; pivots with modulus <= tol * ||M||_F count
/// as zero. Basis vectors are back-substituted and left unnormalized.
NullspaceResult nullspace(const Matrix& m, const Real& tol);

Real norm_one(const std::vector<Complex>& v);
Real norm_inf(const std::vector<Complex>& v);
Real norm_frobenius(const Matrix& m);

/// Exact n! (GMP-backed), returned as a Real wide enough to hold it exactly.
Real factorial(unsigned long n);

}  // namespace barypade
