#include "barypade/linalg.hpp"

#include <gmp.h>

#include <algorithm>

#include "barypade/errors.hpp"

namespace barypade {

mpfr_prec_t Matrix::prec() const {
  mpfr_prec_t p = kMinPrec;
  for (const auto& z : e_) p = std::max(p, z.prec());
  return p;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows_, a.cols_, std::max(a.prec(), b.prec()));
  for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows_, a.cols_, std::max(a.prec(), b.prec()));
  for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
  return r;
}

Matrix operator*(const Matrix& a, const Real& s) {
  Matrix r = a;
  for (auto& z : r.e_) z = z * s;
  return r;
}

Matrix operator*(const Matrix& a, const Complex& s) {
  Matrix r = a;
  for (auto& z : r.e_) z = z * s;
  return r;
}

std::vector<Complex> Matrix::mul_vec(const std::vector<Complex>& v) const {
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    Complex s(prec());
    for (int j = 0; j < cols_; ++j) s += at(i, j) * v[static_cast<size_t>(j)];
    out.push_back(s);
  }
  return out;
}

std::vector<Complex> vandermonde_solve(const std::vector<Complex>& nodes,
                                       const std::vector<Complex>& rhs) {
  if (nodes.size() != rhs.size() || nodes.empty())
    fail(errc::parse_error, "vandermonde_solve: size mismatch");
  mpfr_prec_t prec = kMinPrec;
  Real maxmod(prec);
  for (const auto& t : nodes) {
    prec = std::max(prec, t.prec());
    maxmod = max(maxmod, t.abs());
  }
  for (const auto& b : rhs) prec = std::max(prec, b.prec());

  Real sep = quarter_rel(prec) * (Real(1.0, prec) + maxmod);
  size_t n = nodes.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if ((nodes[i] - nodes[j]).abs() <= sep)
        fail(errc::node_collision, "vandermonde_solve: nodes closer than separation threshold");

  // Newton divided differences, in place.
  std::vector<Complex> c = rhs;
  for (size_t k = 0; k + 1 < n; ++k)
    for (size_t j = n - 1; j > k; --j)
      c[j] = (c[j] - c[j - 1]) / (nodes[j] - nodes[j - k - 1]);
  // Expand the Newton form into monomial coefficients.
  for (size_t k = n - 1; k-- > 0;)
    for (size_t j = k; j + 1 < n; ++j) c[j] = c[j] - nodes[k] * c[j + 1];
  return c;
}

NullspaceResult nullspace(const Matrix& m, const Real& tol) {
  const int r = m.rows(), c = m.cols();
  mpfr_prec_t prec = m.prec();
  Matrix a = m;
  std::vector<int> colperm(static_cast<size_t>(c));
  for (int j = 0; j < c; ++j) colperm[static_cast<size_t>(j)] = j;

  Real thresh = tol * norm_frobenius(m);
  NullspaceResult out;
  int rank = 0;
  for (int step = 0; step < std::min(r, c); ++step) {
    int pi = step, pj = step;
    Real best = a.at(step, step).abs();
    for (int i = step; i < r; ++i)
      for (int j = step; j < c; ++j) {
        Real v = a.at(i, j).abs();
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best <= thresh) break;
    if (pi != step)
      for (int j = 0; j < c; ++j) std::swap(a.at(step, j), a.at(pi, j));
    if (pj != step) {
      for (int i = 0; i < r; ++i) std::swap(a.at(i, step), a.at(i, pj));
      std::swap(colperm[static_cast<size_t>(step)], colperm[static_cast<size_t>(pj)]);
    }
    out.pivot_mods.push_back(best);
    for (int i = step + 1; i < r; ++i) {
      Complex f = a.at(i, step) / a.at(step, step);
      a.at(i, step) = Complex(prec);
      for (int j = step + 1; j < c; ++j) a.at(i, j) -= f * a.at(step, j);
    }
    ++rank;
  }
  out.rank = rank;

  for (int f = rank; f < c; ++f) {
    std::vector<Complex> x(static_cast<size_t>(c), Complex(prec));
    x[static_cast<size_t>(f)] = Complex(1.0, 0.0, prec);
    for (int i = rank - 1; i >= 0; --i) {
      Complex s(prec);
      for (int j = i + 1; j < c; ++j) s += a.at(i, j) * x[static_cast<size_t>(j)];
      x[static_cast<size_t>(i)] = -(s / a.at(i, i));
    }
    std::vector<Complex> v(static_cast<size_t>(c), Complex(prec));
    for (int j = 0; j < c; ++j) v[static_cast<size_t>(colperm[static_cast<size_t>(j)])] = x[static_cast<size_t>(j)];
    out.basis.push_back(std::move(v));
  }
  return out;
}

Real norm_one(const std::vector<Complex>& v) {
  mpfr_prec_t p = kMinPrec;
  for (const auto& z : v) p = std::max(p, z.prec());
  Real s(p);
  for (const auto& z : v) s += z.abs();
  return s;
}

Real norm_inf(const std::vector<Complex>& v) {
  mpfr_prec_t p = kMinPrec;
  for (const auto& z : v) p = std::max(p, z.prec());
  Real s(p);
  for (const auto& z : v) s = max(s, z.abs());
  return s;
}

Real norm_frobenius(const Matrix& m) {
  Real s(m.prec());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Real a = m.at(i, j).abs();
      s += a * a;
    }
  return sqrt(s);
}

Real factorial(unsigned long n) {
  mpz_t z;
  mpz_init(z);
  mpz_fac_ui(z, n);
  mpfr_prec_t bits = std::max<mpfr_prec_t>(kMinPrec, static_cast<mpfr_prec_t>(mpz_sizeinbase(z, 2)) + 1);
  Real r(bits);
  mpfr_set_z(r.raw(), z, MPFR_RNDN);
  mpz_clear(z);
  return r;
}

}  // namespace barypade
