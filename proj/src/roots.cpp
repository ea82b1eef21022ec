#include "barypade/roots.hpp"

#include <algorithm>

namespace barypade {

std::vector<Complex> poly_roots(const Poly& p, const RootOptions& opt) {
  mpfr_prec_t prec = std::max(p.prec(), kMinPrec);
  Poly q = p.normalized(pivot_rel(prec));
  int deg = q.degree();
  if (deg < 1) fail(errc::degree_zero, "poly_roots: constant polynomial has no roots");

  const Complex& lead = q.coeff(static_cast<size_t>(deg));
  Real one(1.0, prec);

  if (deg == 1) return {-(q.coeff(0) / q.coeff(1))};

  // Cauchy bound: all roots lie inside |z| <= 1 + max |c_i| / |c_deg|.
  Real radius = one;
  for (int i = 0; i < deg; ++i)
    radius = max(radius, one + q.coeff(static_cast<size_t>(i)).abs() / lead.abs());

  // Fixed offset keeps the start asymmetric w.r.t. real-axis root symmetry.
  Real two_pi = Real(2.0, prec) * Real::pi(prec);
  std::vector<Complex> z;
  z.reserve(static_cast<size_t>(deg));
  for (int j = 0; j < deg; ++j) {
    Real theta = two_pi * Real(static_cast<long>(j), prec) / Real(static_cast<long>(deg), prec) +
                 Real(0.5, prec);
    z.push_back(Complex::unit(theta) * radius);
  }

  Poly dq = q.derivative();
  const Real step_tol = Real::pow2(-static_cast<long>(7 * prec / 8), prec);
  bool converged = false;
  for (int it = 0; it < opt.max_iter && !converged; ++it) {
    converged = true;
    for (int j = 0; j < deg; ++j) {
      Complex v = q.eval(z[static_cast<size_t>(j)]);
      if (v.is_zero()) continue;
      Complex dv = dq.eval(z[static_cast<size_t>(j)]);
      Complex newton = v / dv;
      Complex repulsion(prec);
      for (int i = 0; i < deg; ++i)
        if (i != j) repulsion += Complex(one, Real(prec)) / (z[static_cast<size_t>(j)] - z[static_cast<size_t>(i)]);
      Complex denom = Complex(one, Real(prec)) - newton * repulsion;
      Complex step = denom.is_zero() ? newton : newton / denom;
      z[static_cast<size_t>(j)] -= step;
      if (step.abs() > step_tol * (one + z[static_cast<size_t>(j)].abs())) converged = false;
    }
  }
  if (!converged) fail(errc::non_convergence, "poly_roots: Aberth iteration cap exceeded");

  Real accept = (opt.root_tol.is_zero() ? half_rel(prec) : opt.root_tol) * q.max_coeff_mod();
  for (const auto& r : z)
    if (q.eval(r).abs() > accept)
      fail(errc::non_convergence, "poly_roots: residual above tolerance (precision too low?)");
  return z;
}

}  // namespace barypade
