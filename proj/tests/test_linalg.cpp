#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <utility>
#include <vector>

#include "barypade/errors.hpp"
#include "barypade/linalg.hpp"
#include "barypade/poly.hpp"
#include "barypade/scalar.hpp"
#include "test_util.hpp"

using barypade::Complex;
using barypade::errc;
using barypade::Matrix;
using barypade::Poly;
using barypade::Real;
using testutil::close;
using testutil::Rng;
using testutil::thrown_code;

namespace {

constexpr mpfr_prec_t P = 256;

Complex cx(double re, double im = 0.0) { return Complex(re, im, P); }

Matrix vandermonde_matrix(const std::vector<Complex>& nodes) {
  const int n = static_cast<int>(nodes.size());
  Matrix v(n, n, P);
  for (int i = 0; i < n; ++i) {
    Complex p = cx(1.0);
    for (int j = 0; j < n; ++j) {
      v.at(i, j) = p;
      p *= nodes[static_cast<size_t>(i)];
    }
  }
  return v;
}

// Dense partial-pivot LU solve; deliberately a different algorithm from the
// library's progressive Vandermonde path so the two can cross-check.
std::vector<Complex> lu_solve(Matrix a, std::vector<Complex> b) {
  const int n = a.rows();
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (a.at(i, k).abs() > a.at(piv, k).abs()) piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(piv)]);
    }
    for (int i = k + 1; i < n; ++i) {
      Complex f = a.at(i, k) / a.at(k, k);
      for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
      b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(k)];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    Complex s = b[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(i)] = s / a.at(i, i);
  }
  return b;
}

}  // namespace

TEST_CASE("Matrix: elementwise algebra and mat-vec") {
  Matrix a(2, 2, P);
  a.at(0, 0) = cx(1.0);
  a.at(0, 1) = cx(2.0);
  a.at(1, 0) = cx(3.0);
  a.at(1, 1) = cx(4.0);
  Matrix b(2, 2, P);
  b.at(0, 0) = cx(0.5);

  Matrix s = a + b;
  CHECK(s.at(0, 0).re().to_double() == 1.5);
  CHECK(s.at(1, 1).re().to_double() == 4.0);
  Matrix d = a - b;
  CHECK(d.at(0, 0).re().to_double() == 0.5);
  Matrix sc = a * Real(2.0, P);
  CHECK(sc.at(1, 0).re().to_double() == 6.0);
  Matrix sci = a * Complex(0.0, 1.0, P);
  CHECK(sci.at(0, 1).im().to_double() == 2.0);

  auto y = a.mul_vec({cx(1.0), cx(1.0)});
  CHECK(y[0].re().to_double() == 3.0);
  CHECK(y[1].re().to_double() == 7.0);
}

TEST_CASE("vandermonde_solve: pinned two-node interpolant") {
  // nodes (1, -1), values (1, 1/3): the line through them is 2/3 + z/3
  std::vector<Complex> nodes = {cx(1.0), cx(-1.0)};
  std::vector<Complex> rhs = {cx(1.0), Complex(1.0, 0.0, P) / Real(3.0, P)};
  auto d = barypade::vandermonde_solve(nodes, rhs);
  REQUIRE(d.size() == 2);
  const Real tol = Real::pow2(-240, P);
  CHECK(close(d[0], Complex(2.0, 0.0, P) / Real(3.0, P), tol));
  CHECK(close(d[1], Complex(1.0, 0.0, P) / Real(3.0, P), tol));
}

TEST_CASE("vandermonde_solve: agrees with dense LU and interpolates") {
  Rng rng(20260823u);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 6;
    std::vector<Complex> nodes, rhs;
    for (int i = 0; i < n; ++i) {
      nodes.push_back(rng.annulus(P) + cx(0.1 * trial));
      rhs.push_back(rng.complex(P));
    }
    auto d = barypade::vandermonde_solve(nodes, rhs);
    auto d_lu = lu_solve(vandermonde_matrix(nodes), rhs);
    REQUIRE(d.size() == static_cast<size_t>(n));

    Real scale = Real(1.0, P) + barypade::norm_inf(d);
    const Real tol = Real::pow2(-180, P) * scale;
    for (int i = 0; i < n; ++i) {
      CHECK(close(d[static_cast<size_t>(i)], d_lu[static_cast<size_t>(i)], tol));
    }
    // interpolation identity: the solved polynomial passes through the data
    Poly interp{d};
    for (int i = 0; i < n; ++i) {
      CHECK(close(interp.eval(nodes[static_cast<size_t>(i)]), rhs[static_cast<size_t>(i)], tol));
    }
  }
}

TEST_CASE("vandermonde_solve: near-coincident nodes are rejected") {
  std::vector<Complex> nodes = {cx(1.0), Complex(Real(1.0, P) + Real::pow2(-200, P), Real(P))};
  std::vector<Complex> rhs = {cx(1.0), cx(2.0)};
  CHECK(thrown_code([&] { barypade::vandermonde_solve(nodes, rhs); }) == errc::node_collision);
}

TEST_CASE("nullspace: one-row systems expose the weight ratio") {
  Matrix m(1, 2, P);
  m.at(0, 0) = cx(3.0);
  m.at(0, 1) = cx(1.0);
  auto ns = barypade::nullspace(m, barypade::half_rel(P));
  CHECK(ns.rank == 1);
  REQUIRE(ns.basis.size() == 1);
  const auto& v = ns.basis[0];
  REQUIRE(v.size() == 2);
  // 3 v0 + v1 = 0, so v0/v1 = -1/3 regardless of scaling
  Complex ratio = v[0] / v[1];
  CHECK(close(ratio, Complex(-1.0, 0.0, P) / Real(3.0, P), Real::pow2(-200, P)));
}

TEST_CASE("nullspace: full rank and zero matrix edge cases") {
  Matrix eye(2, 2, P);
  eye.at(0, 0) = cx(1.0);
  eye.at(1, 1) = cx(1.0);
  auto full = barypade::nullspace(eye, barypade::half_rel(P));
  CHECK(full.rank == 2);
  CHECK(full.basis.empty());
  REQUIRE(full.pivot_mods.size() == 2);
  CHECK(full.pivot_mods[0].to_double() == 1.0);

  Matrix z(2, 3, P);
  auto none = barypade::nullspace(z, barypade::half_rel(P));
  CHECK(none.rank == 0);
  CHECK(none.basis.size() == 3);
}

TEST_CASE("nullspace: engineered rank deficiency and residuals") {
  Rng rng(77001u);
  Matrix m(3, 3, P);
  for (int j = 0; j < 3; ++j) {
    m.at(0, j) = rng.complex(P);
    m.at(1, j) = rng.complex(P);
    m.at(2, j) = m.at(0, j) + m.at(1, j) * Real(2.0, P);  // dependent third row
  }
  auto ns = barypade::nullspace(m, barypade::half_rel(P));
  CHECK(ns.rank == 2);
  REQUIRE(ns.basis.size() == 1);
  auto r = m.mul_vec(ns.basis[0]);
  Real bound = Real::pow2(-180, P) * barypade::norm_frobenius(m) * barypade::norm_inf(ns.basis[0]);
  CHECK(barypade::norm_inf(r) <= bound);

  // full pivoting picks magnitudes in non-increasing order
  REQUIRE(ns.pivot_mods.size() == 2);
  CHECK(ns.pivot_mods[0] >= ns.pivot_mods[1]);
}

TEST_CASE("nullspace: random wide systems have cols - rank basis vectors") {
  Rng rng(90210u);
  Matrix m(4, 6, P);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 6; ++j) m.at(i, j) = rng.complex(P);
  auto ns = barypade::nullspace(m, barypade::half_rel(P));
  CHECK(ns.rank == 4);  // random rows are independent with overwhelming margin
  REQUIRE(ns.basis.size() == 2);
  for (const auto& v : ns.basis) {
    auto r = m.mul_vec(v);
    Real bound = Real::pow2(-180, P) * barypade::norm_frobenius(m) * barypade::norm_inf(v);
    CHECK(barypade::norm_inf(r) <= bound);
    CHECK(barypade::norm_inf(v) > Real(0.5, P));  // free column carries an exact 1
  }
}

TEST_CASE("norms: pinned values and the triangle inequality") {
  std::vector<Complex> v = {cx(3.0, 4.0), cx(1.0)};
  CHECK(barypade::norm_one(v).to_double() == 6.0);
  CHECK(barypade::norm_inf(v).to_double() == 5.0);

  Matrix m(1, 2, P);
  m.at(0, 0) = cx(3.0);
  m.at(0, 1) = cx(0.0, 4.0);
  CHECK(barypade::norm_frobenius(m).to_double() == 5.0);

  Rng rng(5150u);
  Matrix a(3, 3, P), b(3, 3, P);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a.at(i, j) = rng.complex(P);
      b.at(i, j) = rng.complex(P);
    }
  CHECK(barypade::norm_frobenius(a + b) <=
        barypade::norm_frobenius(a) + barypade::norm_frobenius(b) + Real::pow2(-240, P));
}

TEST_CASE("factorial: exact integers") {
  CHECK(barypade::factorial(0).to_long() == 1);
  CHECK(barypade::factorial(1).to_long() == 1);
  CHECK(barypade::factorial(4).to_long() == 24);
  CHECK(barypade::factorial(12).to_long() == 479001600);
  CHECK(barypade::factorial(20).to_long() == 2432902008176640000L);
  // recurrence holds exactly, not just approximately
  CHECK(barypade::factorial(30) == Real(30.0, 256) * barypade::factorial(29));
}
