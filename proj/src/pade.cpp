#include "barypade/pade.hpp"

#include <string>
#include <utility>

#include "barypade/errors.hpp"
#include "barypade/roots.hpp"

namespace barypade {

namespace {

Real default_or(const Real& tol, Real fallback) { return tol.is_zero() ? std::move(fallback) : tol; }

mpfr_prec_t max_prec(mpfr_prec_t a, mpfr_prec_t b) { return a > b ? a : b; }

// Shared Taylor driver for p and q: coefficient h of sum_j a_j/(z - x_j)
// around 0 is -sum_j a_j x_j^{-(h+1)}.
Series bary_taylor(const NodeLevel& level, const std::vector<Complex>& a, int N) {
  const mpfr_prec_t pr = level.prec();
  const size_t np1 = level.nodes().size();
  std::vector<Complex> inv;
  inv.reserve(np1);
  for (const auto& x : level.nodes()) inv.push_back(Complex(1.0, 0.0, pr) / x);
  std::vector<Complex> run = inv;  // holds x_j^{-(h+1)}
  Series out(N, pr);
  for (int h = 0; h <= N; ++h) {
    Complex s(pr);
    for (size_t j = 0; j < np1; ++j) s += a[j] * run[j];
    out.coeffs()[static_cast<size_t>(h)] = -s;
    if (h < N)
      for (size_t j = 0; j < np1; ++j) run[j] *= inv[j];
  }
  return out;
}

}  // namespace

NodeLevel::NodeLevel(std::vector<Complex> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2)
    fail(errc::degree_zero, "a node level needs degree >= 1, i.e. at least two nodes");
  const Real sep = separation();
  for (size_t j = 0; j < nodes_.size(); ++j) {
    if (nodes_[j].abs() <= sep)
      fail(errc::node_collision,
           "node " + std::to_string(j) + " sits on (or too close to) the origin");
    for (size_t i = 0; i < j; ++i) {
      if ((nodes_[i] - nodes_[j]).abs() <= sep)
        fail(errc::node_collision, "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                       " fall within the separation threshold");
    }
  }
}

mpfr_prec_t NodeLevel::prec() const {
  mpfr_prec_t p = kMinPrec;
  for (const auto& x : nodes_) p = max_prec(p, x.prec());
  return p;
}

Real NodeLevel::max_modulus() const {
  Real m(0.0, prec());
  for (const auto& x : nodes_) m = max(m, x.abs());
  return m;
}

Real NodeLevel::separation() const {
  const mpfr_prec_t p = prec();
  return quarter_rel(p) * (Real(1.0, p) + max_modulus());
}

Complex tail_sum(const Series& c, const Complex& x, int n, int i) {
  const int lo = n - i;
  const int N = c.truncation_order();
  if (N < lo) return Complex(max_prec(c.prec(), x.prec()));
  Complex s = c.coeff(N);
  for (int k = N - 1; k >= lo; --k) s = s * x + c.coeff(k);
  return s;
}

Matrix build_system(const Series& c, const NodeLevel& level) {
  const int n = level.n();
  if (c.truncation_order() < n)
    fail(errc::insufficient_truncation,
         "series truncation order " + std::to_string(c.truncation_order()) +
             " is below the approximant degree " + std::to_string(n) +
             "; order conditions would silently drop");
  Matrix m(n, n + 1, max_prec(c.prec(), level.prec()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= n; ++j) m.at(i, j) = tail_sum(c, level.node(j), n, i);
  return m;
}

WeightSolution solve_weights(const Matrix& m, const Real& zero_weight_tol) {
  const mpfr_prec_t pr = m.prec();
  const int n = m.rows();
  NullspaceResult ns = nullspace(m, pivot_rel(pr));
  if (ns.rank < n)
    fail(errc::degenerate_system,
         "order-condition matrix has rank " + std::to_string(ns.rank) + " but needs " +
             std::to_string(n) + "; the weight vector is not unique up to scale");
  // rank n on an n x (n+1) matrix leaves exactly one nullspace direction
  std::vector<Complex> v = ns.basis.at(0);

  size_t arg = 0;
  Real best = v[0].abs();
  for (size_t j = 1; j < v.size(); ++j) {
    const Real mod = v[j].abs();
    if (mod > best) {  // strict: ties keep the lowest index
      best = mod;
      arg = j;
    }
  }
  if (best.is_zero()) fail(errc::degenerate_system, "nullvector is identically zero");

  WeightSolution out;
  out.weights.reserve(v.size());
  const Complex pivot = v[arg];
  for (const auto& e : v) out.weights.push_back(e / pivot);
  out.weights[arg] = Complex(1.0, 0.0, pr);  // exact, not just rounded to 1

  const Real tol = default_or(zero_weight_tol, half_rel(pr));
  for (size_t j = 0; j < out.weights.size(); ++j)
    if (out.weights[j].abs() <= tol) out.zero_weight_indices.push_back(static_cast<int>(j));
  return out;
}

BaryRational approximant_from_series(const Series& c, const NodeLevel& level,
                                     const Real& zero_weight_tol) {
  Matrix m = build_system(c, level);
  WeightSolution ws = solve_weights(m, zero_weight_tol);
  std::vector<Complex> values;
  values.reserve(level.nodes().size());
  for (const auto& x : level.nodes()) values.push_back(c.eval(x));
  return BaryRational{level, std::move(ws.weights), std::move(values),
                      std::move(ws.zero_weight_indices)};
}

Complex bary_eval(const BaryRational& r, const Complex& z) {
  const mpfr_prec_t pr = max_prec(z.prec(), r.level.prec());
  const Real sep = r.level.separation();
  for (size_t j = 0; j < r.level.nodes().size(); ++j) {
    if ((z - r.level.nodes()[j]).abs() <= sep) {
      // On a node the barycentric form is the interpolated value — unless the
      // weight vanished, in which case the j-term is the zero function and the
      // generic path below (which skips it) stays finite.
      if (!r.weights[j].is_zero()) return r.values[j];
      break;
    }
  }

  Complex p(pr), q(pr);
  Real scale_p(0.0, pr), scale_q(0.0, pr);
  for (size_t j = 0; j < r.level.nodes().size(); ++j) {
    if (r.weights[j].is_zero()) continue;
    const Complex t = r.weights[j] / (z - r.level.nodes()[j]);
    q += t;
    scale_q = max(scale_q, t.abs());
    const Complex tp = t * r.values[j];
    p += tp;
    scale_p = max(scale_p, tp.abs());
  }

  const Real one(1.0, pr);
  if (q.abs() <= pivot_rel(pr) * max(one, scale_q)) {
    if (p.abs() > pivot_rel(pr) * max(one, scale_p))
      fail(errc::pole_hit, "q(z) collapsed below the pivot floor while p(z) did not: z is a pole");
    if (q.is_zero())
      fail(errc::pole_hit, "q(z) and p(z) both vanish; the quotient is undefined here");
  }
  return p / q;
}

Series q_taylor(const BaryRational& r, int N) { return bary_taylor(r.level, r.weights, N); }

Series p_taylor(const BaryRational& r, int N) {
  std::vector<Complex> wf;
  wf.reserve(r.weights.size());
  for (size_t j = 0; j < r.weights.size(); ++j) wf.push_back(r.weights[j] * r.values[j]);
  return bary_taylor(r.level, wf, N);
}

ContactReport contact_check(const Series& c, const BaryRational& r, const Real& contact_tol) {
  const int n = r.level.n();
  if (c.truncation_order() < n)
    fail(errc::insufficient_truncation,
         "series truncation order " + std::to_string(c.truncation_order()) +
             " cannot witness contact of order " + std::to_string(n));
  const mpfr_prec_t pr = max_prec(c.prec(), r.level.prec());
  const Real tol = default_or(contact_tol, half_rel(pr));

  const Series q = q_taylor(r, n - 1);
  const Series p = p_taylor(r, n - 1);
  const Series fq = series_product_prefix(c, q, n);

  ContactReport rep;
  rep.order_target = n;
  // residuals are judged relative to the size of the f*q prefix, floored at 1
  Real scale(1.0, pr);
  for (int h = 0; h < n; ++h) scale = max(scale, fq.coeff(h).abs());
  rep.max_rel_residual = Real(0.0, pr);
  for (int h = 0; h < n; ++h) {
    const Complex res = fq.coeff(h) - p.coeff(h);
    rep.residual_coeffs.push_back(res);
    rep.max_rel_residual = max(rep.max_rel_residual, res.abs() / scale);
  }
  rep.pass = rep.max_rel_residual <= tol;
  return rep;
}

std::vector<Complex> q_poles(const BaryRational& r) {
  const mpfr_prec_t pr = r.level.prec();
  const size_t np1 = r.level.nodes().size();

  // numerator of q over the common denominator prod(z - x_i)
  Poly num;
  for (size_t j = 0; j < np1; ++j) {
    if (r.weights[j].is_zero()) continue;
    std::vector<Complex> others;
    others.reserve(np1 - 1);
    for (size_t i = 0; i < np1; ++i)
      if (i != j) others.push_back(r.level.nodes()[i]);
    num = num + Poly::from_roots(others, r.weights[j]);
  }

  // the leading coefficient is sum_j w_j, which may cancel: trim before rooting
  const Poly trimmed = num.normalized(pivot_rel(pr));
  if (trimmed.degree() < 1) return {};

  const std::vector<Complex> roots = poly_roots(trimmed);
  const Real sep = r.level.separation();
  std::vector<Complex> keep;
  for (const auto& z : roots) {
    bool removable = false;
    for (const auto& x : r.level.nodes())
      if ((z - x).abs() <= sep) {
        removable = true;  // cancels the barycentric pole at x; not a zero of q
        break;
      }
    if (!removable) keep.push_back(z);
  }
  return keep;
}

PoleLocation pole_near(const BaryRational& r, const Complex& target, const Real& tol) {
  const Real sep = r.level.separation();
  for (const auto& x : r.level.nodes())
    if ((target - x).abs() <= sep)
      fail(errc::alpha_on_node, "pole target coincides with an interpolation node");

  const mpfr_prec_t pr = max_prec(target.prec(), r.level.prec());
  auto q_and_dq = [&](const Complex& z) {
    Complex q(pr), dq(pr);
    for (size_t j = 0; j < r.level.nodes().size(); ++j) {
      if (r.weights[j].is_zero()) continue;
      const Complex d = z - r.level.nodes()[j];
      const Complex t = r.weights[j] / d;
      q += t;
      dq -= t / d;
    }
    return std::pair<Complex, Complex>(q, dq);
  };

  Real diam(0.0, pr);
  const auto& xs = r.level.nodes();
  for (size_t j = 0; j < xs.size(); ++j)
    for (size_t i = 0; i < j; ++i) diam = max(diam, (xs[i] - xs[j]).abs());
  const Real trust = target.abs() + diam;

  auto near_node = [&](const Complex& z) {
    for (const auto& x : xs)
      if ((z - x).abs() <= sep) return true;
    return false;
  };

  Complex pole(pr);
  bool have = false;
  try {
    pole = newton_root(q_and_dq, target, tol, 200);
    have = true;
  } catch (const error& e) {
    if (e.code() != errc::non_convergence && e.code() != errc::derivative_underflow) throw;
  }
  if (have && ((pole - target).abs() > trust || near_node(pole))) have = false;

  if (!have) {
    // global fallback: root the numerator, take the zero nearest the target,
    // then try to polish it (best effort — the caller judges the residual)
    Complex best_z(pr);
    bool found = false;
    Real best_d(0.0, pr);
    for (const auto& z : q_poles(r)) {
      const Real d = (z - target).abs();
      if (!found || d < best_d) {
        best_d = d;
        best_z = z;
        found = true;
      }
    }
    if (!found || best_d > trust)
      fail(errc::no_pole, "no zero of q within the trust radius of the target");
    pole = best_z;
    try {
      pole = newton_root(q_and_dq, pole, tol, 50);
    } catch (const error& e) {
      if (e.code() != errc::non_convergence && e.code() != errc::derivative_underflow) throw;
    }
  }

  auto [qv, dqv] = q_and_dq(pole);
  return PoleLocation{pole, qv.abs(), dqv.abs()};
}

}  // namespace barypade
