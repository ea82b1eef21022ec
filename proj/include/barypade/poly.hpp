#pragma once

#include <vector>

#include "barypade/scalar.hpp"

namespace barypade {

/// Dense polynomial, ascending-degree coefficients. An empty vector is the
/// zero polynomial. Trailing near-zero coefficients are only removed by an
/// explicit normalized() call, never implicitly.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {}

  const std::vector<Complex>& coeffs() const { return c_; }
  bool is_zero_poly() const { return c_.empty(); }
  /// degree = len - 1; the zero polynomial reports -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Complex& coeff(size_t i) const { return c_[i]; }
  mpfr_prec_t prec() const;

  /// Horner evaluation at full working precision.
  Complex eval(const Complex& z) const;
  Poly derivative() const;
  /// Largest coefficient modulus (0 for the zero polynomial).
  Real max_coeff_mod() const;
  /// Copy with trailing coefficients of modulus <= rel_tol * max_coeff_mod removed.
  Poly normalized(const Real& rel_tol) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Complex& s);

  /// leading * prod (z - r_i); test-oracle companion of poly_roots.
  static Poly from_roots(const std::vector<Complex>& roots, const Complex& leading);

 private:
  std::vector<Complex> c_;
};

/// Truncated power series: coefficients c_0..c_N. Indexing past the
/// truncation order reads zero (the artifact only ever builds finite
/// truncations, which are genuine polynomials).
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {}
  /// Zero series with truncation order n.
  Series(int truncation_order, mpfr_prec_t prec)
      : c_(static_cast<size_t>(truncation_order) + 1, Complex(prec)) {}

  const std::vector<Complex>& coeffs() const { return c_; }
  std::vector<Complex>& coeffs() { return c_; }
  int truncation_order() const { return static_cast<int>(c_.size()) - 1; }
  mpfr_prec_t prec() const;

  /// c_m, zero-extended beyond the truncation.
  Complex coeff(int m) const {
    if (m < 0 || m >= static_cast<int>(c_.size())) return Complex(prec());
    return c_[static_cast<size_t>(m)];
  }

  Poly as_poly() const { return Poly(c_); }
  Complex eval(const Complex& z) const { return as_poly().eval(z); }

 private:
  std::vector<Complex> c_;
};

/// First n coefficients of the Cauchy product a*b.
Series series_product_prefix(const Series& a, const Series& b, int n);

}  // namespace barypade
