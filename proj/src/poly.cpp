#include "barypade/poly.hpp"

#include <algorithm>

#include "barypade/errors.hpp"

namespace barypade {

namespace {
mpfr_prec_t prec_of(const std::vector<Complex>& c) {
  mpfr_prec_t p = kMinPrec;
  for (const auto& z : c) p = std::max(p, z.prec());
  return p;
}
}  // namespace

mpfr_prec_t Poly::prec() const { return prec_of(c_); }
mpfr_prec_t Series::prec() const { return prec_of(c_); }

Complex Poly::eval(const Complex& z) const {
  mpfr_prec_t p = std::max(prec(), z.prec());
  Complex acc(p);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly{};
  mpfr_prec_t p = prec();
  std::vector<Complex> d;
  d.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Real(static_cast<long>(i), p));
  return Poly(std::move(d));
}

Real Poly::max_coeff_mod() const {
  Real m(prec());
  for (const auto& z : c_) m = max(m, z.abs());
  return m;
}

Poly Poly::normalized(const Real& rel_tol) const {
  Real floor = rel_tol * max_coeff_mod();
  size_t n = c_.size();
  while (n > 0 && c_[n - 1].abs() <= floor) --n;
  return Poly(std::vector<Complex>(c_.begin(), c_.begin() + static_cast<long>(n)));
}

Poly operator+(const Poly& a, const Poly& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  size_t n = std::max(a.c_.size(), b.c_.size());
  std::vector<Complex> c(n, Complex(p));
  for (size_t i = 0; i < n; ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] += b.c_[i];
  }
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  size_t n = std::max(a.c_.size(), b.c_.size());
  std::vector<Complex> c(n, Complex(p));
  for (size_t i = 0; i < n; ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] -= b.c_[i];
  }
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return Poly{};
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex(p));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Complex& s) {
  std::vector<Complex> c;
  c.reserve(a.c_.size());
  for (const auto& z : a.c_) c.push_back(z * s);
  return Poly(std::move(c));
}

Poly Poly::from_roots(const std::vector<Complex>& roots, const Complex& leading) {
  Poly p(std::vector<Complex>{leading});
  for (const auto& r : roots) {
    Poly lin(std::vector<Complex>{-r, Complex(1.0, 0.0, r.prec())});
    p = p * lin;
  }
  return p;
}

Series series_product_prefix(const Series& a, const Series& b, int n) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  std::vector<Complex> c(static_cast<size_t>(std::max(n, 0)), Complex(p));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i <= k; ++i) c[static_cast<size_t>(k)] += a.coeff(i) * b.coeff(k - i);
  return Series(std::move(c));
}

}  // namespace barypade
