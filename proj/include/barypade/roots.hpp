#pragma once

#include <utility>
#include <vector>

#include "barypade/errors.hpp"
#include "barypade/poly.hpp"
#include "barypade/scalar.hpp"

namespace barypade {

struct RootOptions {
  int max_iter = 400;
  /// Residual acceptance: |p(r)| <= root_tol * max coefficient modulus.
  /// Zero means "use 2^(-prec/2)".
  Real root_tol{};
};

/// All roots of p (degree copies, clusters approximating multiplicity) by
/// Aberth-Ehrlich simultaneous iteration. Deterministic: initial guesses sit
/// on a circle at the Cauchy bound with a fixed angular offset, no randomness.
/// Throws degree_zero for constant polynomials, non_convergence when the
/// iteration cap is hit or a residual fails the acceptance test.
std::vector<Complex> poly_roots(const Poly& p, const RootOptions& opt = {});

/// Newton iteration on a user-supplied (value, derivative) evaluator.
/// Returns z with |value(z)| <= tol. The iterate sequence is deterministic.
template <class Eval>
Complex newton_root(Eval&& eval, Complex z, const Real& tol, int max_iter) {
  mpfr_prec_t p = std::max(z.prec(), tol.prec());
  const Real floor_rel = pivot_rel(p);
  const Real near_zero = sqrt(tol);
  for (int it = 0; it < max_iter; ++it) {
    auto [v, dv] = eval(z);
    Real vm = v.abs();
    if (vm <= tol) return z;
    if (dv.abs() <= floor_rel * (Real(1.0, p) + vm)) {
      if (vm <= near_zero)
        fail(errc::derivative_underflow, "newton: derivative underflow near a degenerate zero");
      fail(errc::non_convergence, "newton: derivative underflow far from any zero");
    }
    z = z - v / dv;
  }
  fail(errc::non_convergence, "newton: iteration cap exceeded");
}

}  // namespace barypade
