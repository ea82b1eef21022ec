#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "barypade/errors.hpp"
#include "barypade/linalg.hpp"
#include "barypade/pade.hpp"
#include "barypade/poly.hpp"
#include "barypade/scalar.hpp"
#include "test_util.hpp"

using namespace barypade;
using testutil::close;
using testutil::Rng;
using testutil::thrown_code;

namespace {

constexpr mpfr_prec_t P = 256;
const Real kTiny = Real::pow2(-240, P);

Complex cx(double re, double im = 0.0) { return Complex(re, im, P); }

NodeLevel pm_one() { return NodeLevel({cx(1.0), cx(-1.0)}); }

// degree-1 approximant of f(z) = z on nodes {1, -1}; reproduces f exactly
BaryRational identity_approximant() {
  Series c({cx(0.0), cx(1.0)});
  return approximant_from_series(c, pm_one());
}

// hand-built two-node rational with prescribed weights/values
BaryRational rational_with(NodeLevel level, std::vector<Complex> w, std::vector<Complex> v) {
  return BaryRational{std::move(level), std::move(w), std::move(v), {}};
}

// independent evaluation of q alone (bary_eval only exposes p/q); runs at the
// caller's precision so oracles can sample with extra headroom
Complex q_direct(const BaryRational& r, const Complex& z, mpfr_prec_t prec) {
  Complex q(prec);
  for (size_t j = 0; j < r.weights.size(); ++j) {
    Complex w = Complex(prec) + r.weights[j];
    Complex x = Complex(prec) + r.level.nodes()[j];
    q += w / (z - x);
  }
  return q;
}

Series random_series(Rng& rng, int order) {
  std::vector<Complex> c;
  for (int i = 0; i <= order; ++i) c.push_back(rng.complex(P));
  return Series(c);
}

NodeLevel random_level(Rng& rng, int n) {
  std::vector<Complex> nodes;
  for (int i = 0; i < n + 1; ++i) nodes.push_back(rng.annulus(P));
  return NodeLevel(nodes);
}

}  // namespace

TEST_CASE("NodeLevel: validation") {
  CHECK(thrown_code([] { NodeLevel({cx(1.0)}); }) == errc::degree_zero);
  CHECK(thrown_code([] { NodeLevel({cx(1.0), cx(0.0)}); }) == errc::node_collision);
  CHECK(thrown_code([] {
          NodeLevel({cx(1.0), Complex(Real(1.0, P) + Real::pow2(-200, P), Real(P))});
        }) == errc::node_collision);

  NodeLevel ok({cx(1.0), cx(-1.0), cx(0.0, 2.0)});
  CHECK(ok.n() == 2);
  CHECK(ok.max_modulus().to_double() == 2.0);
  CHECK(ok.separation() < Real(1e-10, P));
}

TEST_CASE("tail_sum: pinned values") {
  // f = z: only the k=1 term survives, x^0 = 1
  Series fz({cx(0.0), cx(1.0)});
  CHECK(tail_sum(fz, cx(-1.0), 1, 0) == cx(1.0));

  Series zeros(5, P);
  CHECK(tail_sum(zeros, cx(2.0), 3, 1).is_zero());

  // c = (0, 2u/3, u/3) at x = 1, n = 1, i = 0: sum is u
  Real u(0.37, P);
  Complex c1 = Complex(2.0, 0.0, P) * u / Real(3.0, P);
  Complex c2 = Complex(1.0, 0.0, P) * u / Real(3.0, P);
  Series adv({cx(0.0), c1, c2});
  CHECK(close(tail_sum(adv, cx(1.0), 1, 0), Complex(u, Real(P)), kTiny));
  // same series at x = -1: 2u/3 - u/3 = u/3
  CHECK(close(tail_sum(adv, cx(-1.0), 1, 0), Complex(u / Real(3.0, P), Real(P)), kTiny));
}

TEST_CASE("build_system: pinned matrices and truncation guard") {
  NodeLevel lvl = pm_one();
  Series fz({cx(0.0), cx(1.0)});
  Matrix m = build_system(fz, lvl);
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 2);
  CHECK(m.at(0, 0) == cx(1.0));
  CHECK(m.at(0, 1) == cx(1.0));

  Series zero(4, P);
  Matrix mz = build_system(zero, lvl);
  CHECK(mz.at(0, 0).is_zero());
  CHECK(mz.at(0, 1).is_zero());

  // f = u*z*(2/3 + z/3) gives the one-row system (u, u/3)
  Real u(1.0, P);
  Series adv({cx(0.0), cx(2.0) * u / Real(3.0, P), cx(1.0) * u / Real(3.0, P)});
  Matrix ma = build_system(adv, lvl);
  CHECK(close(ma.at(0, 0), Complex(u, Real(P)), kTiny));
  CHECK(close(ma.at(0, 1), Complex(u / Real(3.0, P), Real(P)), kTiny));

  Series short_c({cx(1.0), cx(1.0)});
  NodeLevel lvl3({cx(1.0), cx(-1.0), cx(0.0, 1.0), cx(0.0, -1.0)});
  CHECK(thrown_code([&] { build_system(short_c, lvl3); }) == errc::insufficient_truncation);
}

TEST_CASE("solve_weights: pinned nullvectors and normalization") {
  Matrix m(1, 2, P);
  m.at(0, 0) = cx(1.0);
  m.at(0, 1) = cx(1.0);
  auto ws = solve_weights(m);
  REQUIRE(ws.weights.size() == 2);
  CHECK(ws.weights[0] == cx(1.0));  // max-modulus tie broken toward index 0
  CHECK(close(ws.weights[1], cx(-1.0), kTiny));
  CHECK(ws.zero_weight_indices.empty());

  Matrix m2(1, 2, P);
  m2.at(0, 0) = cx(1.0);
  m2.at(0, 1) = cx(1.0) / Real(3.0, P);
  auto ws2 = solve_weights(m2);
  CHECK(ws2.weights[1] == cx(1.0));  // index 1 carries the max modulus
  CHECK(close(ws2.weights[0], cx(-1.0) / Real(3.0, P), kTiny));

  Matrix z(1, 2, P);
  CHECK(thrown_code([&] { solve_weights(z); }) == errc::degenerate_system);
}

TEST_CASE("solve_weights: scale invariance is literal") {
  Rng rng(424242u);
  Series c = random_series(rng, 6);
  NodeLevel lvl = random_level(rng, 3);
  Matrix m = build_system(c, lvl);
  auto base = solve_weights(m);

  // exact scalings (powers of two, possibly rotated by i) commute with
  // MPFR's correct rounding, so the normalized representative is identical
  auto s1 = solve_weights(m * Real(4.0, P));
  auto s2 = solve_weights(m * Complex(0.0, 2.0, P));
  REQUIRE(s1.weights.size() == base.weights.size());
  for (size_t j = 0; j < base.weights.size(); ++j) {
    CHECK(s1.weights[j] == base.weights[j]);
    CHECK(s2.weights[j] == base.weights[j]);
  }
}

TEST_CASE("solve_weights: vanished weight is reported, not fatal") {
  // columns 0 and 2 equal: nullvector (1, 0, -1), so w_1 = 0 exactly
  Matrix m(2, 3, P);
  m.at(0, 0) = cx(1.0);
  m.at(0, 1) = cx(2.0);
  m.at(0, 2) = cx(1.0);
  m.at(1, 0) = cx(3.0);
  m.at(1, 1) = cx(4.0);
  m.at(1, 2) = cx(3.0);
  auto ws = solve_weights(m);
  REQUIRE(ws.weights.size() == 3);
  CHECK(ws.weights[0] == cx(1.0));
  CHECK(ws.weights[1].abs() <= Real::pow2(-200, P));
  CHECK(close(ws.weights[2], cx(-1.0), kTiny));
  REQUIRE(ws.zero_weight_indices.size() == 1);
  CHECK(ws.zero_weight_indices[0] == 1);
}

TEST_CASE("bary_eval: identity approximant reproduces z") {
  BaryRational r = identity_approximant();
  REQUIRE(r.weights.size() == 2);
  CHECK(r.weights[0] == cx(1.0));
  CHECK(close(r.weights[1], cx(-1.0), kTiny));

  CHECK(close(bary_eval(r, cx(7.0)), cx(7.0), kTiny));
  CHECK(close(bary_eval(r, cx(0.3, 0.4)), cx(0.3, 0.4), kTiny));
  // landing on a node returns the stored value exactly
  CHECK(bary_eval(r, cx(1.0)) == r.values[0]);
  CHECK(bary_eval(r, cx(-1.0)) == r.values[1]);
}

TEST_CASE("bary_eval: pole detection") {
  // weights (-1/3, 1) put a zero of q at z = 2 while p(2) != 0
  Real u(1.0, P);
  std::vector<Complex> w = {cx(-1.0) / Real(3.0, P), cx(1.0)};
  std::vector<Complex> v = {Complex(u, Real(P)), Complex(-u / Real(3.0, P), Real(P))};
  BaryRational r = rational_with(pm_one(), w, v);
  CHECK(thrown_code([&] { bary_eval(r, cx(2.0)); }) == errc::pole_hit);
  // away from the pole the value is finite
  CHECK(bary_eval(r, cx(3.0)).abs() < Real(10.0, P));
}

TEST_CASE("q_taylor / p_taylor: identity approximant expansions") {
  BaryRational r = identity_approximant();
  Series q = q_taylor(r, 3);
  CHECK(q.coeff(0).re().to_double() == -2.0);
  CHECK(q.coeff(1).is_zero());
  CHECK(q.coeff(2).re().to_double() == -2.0);
  CHECK(q.coeff(3).is_zero());

  Series p = p_taylor(r, 3);
  CHECK(p.coeff(0).is_zero());
  CHECK(p.coeff(1).re().to_double() == -2.0);
  CHECK(p.coeff(2).is_zero());
  CHECK(p.coeff(3).re().to_double() == -2.0);
}

TEST_CASE("q_taylor: agrees with circle-sampled derivatives") {
  Rng rng(8675309u);
  Series c = random_series(rng, 8);
  NodeLevel lvl = random_level(rng, 3);
  BaryRational r = approximant_from_series(c, lvl);

  const int N = 8;
  Series qt = q_taylor(r, N);

  // trapezoid DFT on a circle of radius 2^-42. Dividing by rho^h amplifies
  // sampling noise by 2^(42h), so the oracle samples at triple precision; the
  // truncation (aliasing) error is negligible because q is analytic well
  // beyond the circle.
  const int M = 16;
  const mpfr_prec_t W = 3 * P;
  const Real rho = Real::pow2(-42, W);
  const Real two_pi = Real(2.0, W) * Real::pi(W);
  std::vector<Complex> samples;
  for (int s = 0; s < M; ++s) {
    Complex zs = Complex::unit(two_pi * Real(static_cast<double>(s), W) / Real(static_cast<double>(M), W)) * rho;
    samples.push_back(q_direct(r, zs, W));
  }
  const Real tol = third_rel(P);
  for (int h = 0; h <= N; ++h) {
    Complex acc(W);
    for (int s = 0; s < M; ++s) {
      Real angle = two_pi * Real(static_cast<double>(s * h), W) / Real(static_cast<double>(M), W);
      Complex rot = Complex::unit(-angle);
      acc += samples[static_cast<size_t>(s)] * rot;
    }
    Complex est = acc / (Real(static_cast<double>(M), W) * pow_ui(rho, static_cast<unsigned long>(h)));
    CHECK(close(est, qt.coeff(h), tol * (Real(1.0, P) + qt.coeff(h).abs())));
  }
}

TEST_CASE("contact_check: identity approximant has zero residuals") {
  Series c({cx(0.0), cx(1.0)});
  BaryRational r = identity_approximant();
  ContactReport rep = contact_check(c, r);
  CHECK(rep.order_target == 1);
  REQUIRE(rep.residual_coeffs.size() == 1);
  CHECK(rep.max_rel_residual <= half_rel(P));
  CHECK(rep.pass);

  // tampering with a weight breaks the order conditions detectably
  BaryRational bad = r;
  bad.weights[1] = cx(-0.9);
  ContactReport repb = contact_check(c, bad);
  CHECK_FALSE(repb.pass);
  CHECK(repb.max_rel_residual > Real(0.05, P));

  Series too_short({cx(1.0)});
  NodeLevel lvl3({cx(1.0), cx(-1.0), cx(2.0)});
  BaryRational r3{lvl3, {cx(1.0), cx(1.0), cx(1.0)}, {cx(0.0), cx(0.0), cx(0.0)}, {}};
  CHECK(thrown_code([&] { contact_check(too_short, r3); }) == errc::insufficient_truncation);
}

TEST_CASE("order conditions: solve-then-check round trip, perturbation fails") {
  Rng rng(1234321u);
  for (int trial = 0; trial < 3; ++trial) {
    Series c = random_series(rng, 6);
    NodeLevel lvl = random_level(rng, 3);
    BaryRational r = approximant_from_series(c, lvl);
    CHECK(contact_check(c, r).pass);

    // interpolation at every node whose weight survived
    for (size_t j = 0; j < r.weights.size(); ++j) {
      if (r.weights[j].abs() > half_rel(P)) {
        CHECK(bary_eval(r, r.level.nodes()[j]) == r.values[j]);
      }
    }

    // bumping any single weight by 2^(-prec/4) must break contact
    for (size_t j = 0; j < r.weights.size(); ++j) {
      BaryRational bad = r;
      bad.weights[j] += Complex(quarter_rel(P), Real(P));
      CHECK_FALSE(contact_check(c, bad).pass);
    }
  }
}

TEST_CASE("q_poles: pinned two-node numerators") {
  NodeLevel lvl = pm_one();
  // w = (1,-1): numerator (z+1) - (z-1) = 2, constant, no zeros
  CHECK(q_poles(rational_with(lvl, {cx(1.0), cx(-1.0)}, {cx(0.0), cx(0.0)})).empty());
  // w = (1,1): numerator 2z
  auto zeros = q_poles(rational_with(lvl, {cx(1.0), cx(1.0)}, {cx(0.0), cx(0.0)}));
  REQUIRE(zeros.size() == 1);
  CHECK(close(zeros[0], cx(0.0), Real::pow2(-120, P)));
  // w = (-1/3, 1): numerator (2/3)z - 4/3, zero at 2
  auto adv = q_poles(rational_with(lvl, {cx(-1.0) / Real(3.0, P), cx(1.0)}, {cx(0.0), cx(0.0)}));
  REQUIRE(adv.size() == 1);
  CHECK(close(adv[0], cx(2.0), Real::pow2(-120, P)));
}

TEST_CASE("q_poles: zeros reconstruct the numerator polynomial") {
  Rng rng(5551212u);
  NodeLevel lvl = random_level(rng, 4);
  std::vector<Complex> w, v;
  for (int j = 0; j <= 4; ++j) {
    w.push_back(rng.complex(P));
    v.push_back(cx(0.0));
  }
  BaryRational r = rational_with(lvl, w, v);

  Poly num;
  for (size_t j = 0; j < w.size(); ++j) {
    std::vector<Complex> others;
    for (size_t i = 0; i < w.size(); ++i)
      if (i != j) others.push_back(lvl.nodes()[i]);
    num = num + Poly::from_roots(others, w[j]);
  }
  Poly trimmed = num.normalized(pivot_rel(P));

  auto zeros = q_poles(r);
  REQUIRE(static_cast<int>(zeros.size()) == trimmed.degree());  // no removable zeros for random weights
  Poly recon = Poly::from_roots(zeros, trimmed.coeff(static_cast<size_t>(trimmed.degree())));
  const Real tol = half_rel(P) * trimmed.max_coeff_mod();
  for (int i = 0; i <= trimmed.degree(); ++i) {
    CHECK(close(recon.coeff(static_cast<size_t>(i)), trimmed.coeff(static_cast<size_t>(i)), tol));
  }
}

TEST_CASE("pole_near: locates the engineered pole with evidence") {
  Real u(1.0, P);
  std::vector<Complex> w = {cx(-1.0) / Real(3.0, P), cx(1.0)};
  std::vector<Complex> v = {Complex(u, Real(P)), Complex(-u / Real(3.0, P), Real(P))};
  BaryRational r = rational_with(pm_one(), w, v);

  const Real tol = third_rel(P);
  PoleLocation loc = pole_near(r, cx(2.1), tol);
  CHECK(close(loc.pole, cx(2.0), Real::pow2(-80, P)));
  CHECK(loc.q_residual <= tol);
  // q'(2) = 2/9 for this weight scaling
  CHECK(close(loc.q_deriv_mod, Real(2.0, P) / Real(9.0, P), Real(1e-20, P)));

  // a target sitting on a node is rejected outright
  CHECK(thrown_code([&] { pole_near(r, cx(1.0), tol); }) == errc::alpha_on_node);
}

TEST_CASE("pole_near: no zeros anywhere near means no_pole") {
  BaryRational r = rational_with(pm_one(), {cx(1.0), cx(-1.0)}, {cx(1.0), cx(-1.0)});
  CHECK(thrown_code([&] { pole_near(r, cx(3.0), third_rel(P)); }) == errc::no_pole);
}
