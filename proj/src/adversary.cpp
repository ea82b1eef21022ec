#include "barypade/adversary.hpp"

#include <string>
#include <utility>
#include <vector>

namespace barypade {

namespace {

Real default_or(const Real& tol, Real fallback) { return tol.is_zero() ? std::move(fallback) : tol; }

Real parse_positive(const std::string& s, mpfr_prec_t prec, const char* what) {
  Real v = Real::from_decimal(s, prec);
  if (!(v > Real(0.0, prec)))
    fail(errc::parse_error, std::string(what) + " must be strictly positive, got '" + s + "'");
  return v;
}

/// Canonical max-modulus normalization (lowest index on ties), matching
/// solve_weights so limit vectors and solved weights are directly comparable.
std::vector<Complex> normalize_maxmod(const std::vector<Complex>& v, mpfr_prec_t prec) {
  size_t arg = 0;
  Real best = v[0].abs();
  for (size_t j = 1; j < v.size(); ++j) {
    const Real m = v[j].abs();
    if (m > best) {
      best = m;
      arg = j;
    }
  }
  if (best.is_zero()) fail(errc::degenerate_system, "cannot normalize the zero vector");
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e / v[arg]);
  out[arg] = Complex(1.0, 0.0, prec);
  return out;
}

bool alpha_clear_of_all_nodes(const ResolvedPlan& rp, const Complex& alpha) {
  for (const auto& lvl : rp.levels) {
    const Real sep = lvl.level.separation();
    for (const auto& t : lvl.level.nodes())
      if ((alpha - t).abs() <= sep) return false;
  }
  return true;
}

Real min_node_dist(const NodeLevel& level, const Complex& z) {
  Real best = (z - level.nodes()[0]).abs();
  for (size_t j = 1; j < level.nodes().size(); ++j) best = min(best, (z - level.nodes()[j]).abs());
  return best;
}

Complex p_eval_direct(const BaryRational& r, const Complex& z) {
  const mpfr_prec_t pr = z.prec() > r.level.prec() ? z.prec() : r.level.prec();
  Complex p(pr);
  for (size_t j = 0; j < r.weights.size(); ++j) {
    if (r.weights[j].is_zero()) continue;
    p += r.weights[j] * r.values[j] / (z - r.level.nodes()[j]);
  }
  return p;
}

Complex q_eval_direct(const BaryRational& r, const Complex& z) {
  const mpfr_prec_t pr = z.prec() > r.level.prec() ? z.prec() : r.level.prec();
  Complex q(pr);
  for (size_t j = 0; j < r.weights.size(); ++j) {
    if (r.weights[j].is_zero()) continue;
    q += r.weights[j] / (z - r.level.nodes()[j]);
  }
  return q;
}

Complex q_deriv_direct(const BaryRational& r, const Complex& z) {
  const mpfr_prec_t pr = z.prec() > r.level.prec() ? z.prec() : r.level.prec();
  Complex dq(pr);
  for (size_t j = 0; j < r.weights.size(); ++j) {
    if (r.weights[j].is_zero()) continue;
    const Complex d = z - r.level.nodes()[j];
    dq -= r.weights[j] / (d * d);
  }
  return dq;
}

/// Coefficient discipline: below n_0 the coefficients are exactly P, the
/// inter-block gaps are exactly zero, and from n_0 on |c_m| <= eps_m.
bool coefficient_discipline(const ResolvedPlan& rp, const Series& coeffs, bool* zeros_ok_out,
                            bool* bounds_ok_out) {
  const int K = rp.K();
  const int n0 = rp.n(0);
  const int N = 2 * rp.n(K);
  bool zeros_ok = true;
  bool bounds_ok = true;

  for (int m = 0; m < n0 && zeros_ok; ++m) {
    const Complex pm = m <= rp.P.degree() ? rp.P.coeff(static_cast<size_t>(m))
                                          : Complex(rp.prec);
    if (!(coeffs.coeff(m) - pm).is_zero()) zeros_ok = false;
  }
  // gaps between consecutive blocks carry structural zeros
  for (int k = 0; k < K && zeros_ok; ++k) {
    for (int m = 2 * rp.n(k) + 1; m < rp.n(k + 1) && zeros_ok; ++m)
      if (!coeffs.coeff(m).is_zero()) zeros_ok = false;
  }
  for (int m = n0; m <= N && bounds_ok; ++m)
    if (coeffs.coeff(m).abs() > rp.eps[static_cast<size_t>(m)]) bounds_ok = false;

  if (zeros_ok_out) *zeros_ok_out = zeros_ok;
  if (bounds_ok_out) *bounds_ok_out = bounds_ok;
  return zeros_ok && bounds_ok;
}

}  // namespace

ResolvedPlan resolve_plan(const AdversaryPlan& plan, mpfr_prec_t prec) {
  if (prec < kMinPrec) fail(errc::parse_error, "precision below the supported minimum of 64 bits");
  if (plan.levels.empty()) fail(errc::parse_error, "a plan needs at least one level");

  ResolvedPlan rp;
  rp.prec = prec;

  // P, with exactly-zero trailing coefficients dropped so the degree test is
  // about actual content, not list length
  std::vector<Complex> pc;
  for (const auto& [re, im] : plan.p_coeffs) pc.push_back(Complex::from_decimal(re, im, prec));
  rp.P = Poly(pc).normalized(Real(0.0, prec));

  for (size_t k = 0; k < plan.levels.size(); ++k) {
    const auto& src = plan.levels[k];
    std::vector<Complex> nodes;
    nodes.reserve(src.nodes.size());
    for (const auto& [re, im] : src.nodes) nodes.push_back(Complex::from_decimal(re, im, prec));
    NodeLevel level(std::move(nodes));
    Complex alpha = Complex::from_decimal(src.alpha.first, src.alpha.second, prec);
    rp.levels.push_back(ResolvedLevel{std::move(level), std::move(alpha)});
  }

  for (int k = 0; k + 1 <= rp.K(); ++k) {
    if (rp.n(k + 1) <= 2 * rp.n(k))
      fail(errc::parse_error, "degree ladder violates n_(k+1) > 2 n_k at k=" + std::to_string(k) +
                                  ": " + std::to_string(rp.n(k + 1)) + " vs 2*" +
                                  std::to_string(rp.n(k)));
  }
  if (rp.P.degree() >= rp.n(0))
    fail(errc::parse_error, "degree of P (" + std::to_string(rp.P.degree()) +
                                ") must be below n_0 = " + std::to_string(rp.n(0)));

  const int top = 2 * rp.n(rp.K());
  if (plan.epsilon.is_geometric) {
    const Real a = parse_positive(plan.epsilon.a, prec, "epsilon.a");
    const Real ratio = parse_positive(plan.epsilon.ratio, prec, "epsilon.ratio");
    Real e = a;
    for (int m = 0; m <= top; ++m) {
      rp.eps.push_back(e);
      e = e * ratio;
    }
  } else {
    if (static_cast<int>(plan.epsilon.values.size()) != top + 1)
      fail(errc::parse_error, "explicit epsilon list must have exactly 2*n_K+1 = " +
                                  std::to_string(top + 1) + " entries, got " +
                                  std::to_string(plan.epsilon.values.size()));
    for (const auto& s : plan.epsilon.values)
      rp.eps.push_back(parse_positive(s, prec, "epsilon entry"));
  }

  // every alpha must clear the nodes of every level, not just its own
  for (int k = 0; k <= rp.K(); ++k) {
    const Complex& alpha = rp.levels[static_cast<size_t>(k)].alpha;
    for (int l = 0; l <= rp.K(); ++l) {
      const auto& lvl = rp.levels[static_cast<size_t>(l)].level;
      const Real sep = lvl.separation();
      for (size_t j = 0; j < lvl.nodes().size(); ++j) {
        if ((alpha - lvl.nodes()[j]).abs() <= sep)
          fail(errc::alpha_on_node, "alpha_" + std::to_string(k) + " coincides with node " +
                                        std::to_string(j) + " of level " + std::to_string(l));
      }
    }
  }

  rp.shrink = Real::from_decimal(plan.search.shrink, prec);
  if (!(rp.shrink > Real(0.0, prec)) || !(rp.shrink < Real(1.0, prec)))
    fail(errc::parse_error, "search.shrink must lie strictly between 0 and 1");
  if (plan.search.max_retries < 0 || plan.search.max_precision_doublings < 0)
    fail(errc::parse_error, "search budgets must be nonnegative");
  rp.max_retries = plan.search.max_retries;
  rp.max_precision_doublings = plan.search.max_precision_doublings;

  rp.contact_tol = plan.tolerances.contact_tol.empty()
                       ? Real()
                       : parse_positive(plan.tolerances.contact_tol, prec, "contact_tol");
  rp.cert_tol = plan.tolerances.cert_tol.empty()
                    ? Real()
                    : parse_positive(plan.tolerances.cert_tol, prec, "cert_tol");
  rp.zero_weight_tol = plan.tolerances.zero_weight_tol.empty()
                           ? Real()
                           : parse_positive(plan.tolerances.zero_weight_tol, prec, "zero_weight_tol");
  rp.genericity_tol = plan.tolerances.genericity_tol.empty()
                          ? Real()
                          : parse_positive(plan.tolerances.genericity_tol, prec, "genericity_tol");
  return rp;
}

std::vector<Complex> lagrange_weights(const NodeLevel& level) {
  const mpfr_prec_t pr = level.prec();
  const auto& t = level.nodes();
  std::vector<Complex> lambda;
  lambda.reserve(t.size());
  for (size_t m = 0; m < t.size(); ++m) {
    Complex prod(1.0, 0.0, pr);
    for (size_t i = 0; i < t.size(); ++i) {
      if (i == m) continue;
      prod *= t[i] - t[m];  // sign convention: t_i - t_m
    }
    lambda.push_back(Complex(1.0, 0.0, pr) / prod);
  }
  return lambda;
}

LevelData level_data(const NodeLevel& level, const Complex& alpha) {
  const mpfr_prec_t pr = level.prec() > alpha.prec() ? level.prec() : alpha.prec();
  const Real sep = level.separation();
  for (size_t m = 0; m < level.nodes().size(); ++m)
    if ((alpha - level.nodes()[m]).abs() <= sep)
      fail(errc::alpha_on_node, "alpha coincides with node " + std::to_string(m));

  LevelData ld;
  ld.lambda = lagrange_weights(level);
  for (const auto& t : level.nodes()) ld.a.push_back(Complex(1.0, 0.0, pr) / (alpha - t));
  ld.d = vandermonde_solve(level.nodes(), ld.a);

  const int n = level.n();
  ld.u = Matrix(n, n + 1, pr);
  for (int j = 0; j <= n; ++j) {
    Complex power(1.0, 0.0, pr);  // t_j^i
    for (int i = 0; i < n; ++i) {
      ld.u.at(i, j) = power * ld.a[static_cast<size_t>(j)];
      power *= level.node(j);
    }
  }
  for (size_t m = 0; m < level.nodes().size(); ++m)
    ld.limit_vec.push_back((alpha - level.nodes()[m]) * ld.lambda[m]);
  return ld;
}

Real radius_r(const ResolvedPlan& rp, int k) {
  Real m(0.0, rp.prec);
  for (int l = 0; l <= k; ++l) m = max(m, rp.levels[static_cast<size_t>(l)].level.max_modulus());
  return Real(1.0, rp.prec) + m;
}

Real tau(const ResolvedPlan& rp, const std::vector<LevelData>& lds, int k) {
  const int kn = k + 1;  // the level whose data feeds the bound
  const int n1 = rp.n(kn);
  const int top = 2 * n1;
  const mpfr_prec_t pr = rp.prec;

  Real num = rp.eps[0];
  for (int m = 1; m <= top; ++m) num = min(num, rp.eps[static_cast<size_t>(m)]);

  // denominator factors accumulate rounding UP so the final quotient, taken
  // toward zero, never overestimates the true tau
  Real sum(pr);
  for (int m = 0; m <= top; ++m)
    mpfr_add(sum.raw(), sum.raw(), rp.eps[static_cast<size_t>(m)].raw(), MPFR_RNDU);
  mpfr_add_ui(sum.raw(), sum.raw(), 1, MPFR_RNDU);

  const Real rnext = radius_r(rp, kn);
  Real rpow(pr);
  mpfr_pow_ui(rpow.raw(), rnext.raw(), static_cast<unsigned long>(top), MPFR_RNDU);

  Real dnorm(pr);
  for (const auto& dj : lds[static_cast<size_t>(kn)].d) {
    Real m(pr);
    mpfr_hypot(m.raw(), dj.re().raw(), dj.im().raw(), MPFR_RNDU);
    mpfr_add(dnorm.raw(), dnorm.raw(), m.raw(), MPFR_RNDU);
  }
  mpfr_add_ui(dnorm.raw(), dnorm.raw(), 1, MPFR_RNDU);

  const Real fact = factorial(static_cast<unsigned long>(n1) + 1);  // exact

  Real den(pr);
  mpfr_mul(den.raw(), sum.raw(), rpow.raw(), MPFR_RNDU);
  mpfr_mul(den.raw(), den.raw(), dnorm.raw(), MPFR_RNDU);
  mpfr_mul(den.raw(), den.raw(), fact.raw(), MPFR_RNDU);

  Real out(pr);
  mpfr_div(out.raw(), num.raw(), den.raw(), MPFR_RNDZ);
  return out;
}

Real chi_partial(const ResolvedPlan& rp, const std::vector<LevelData>& lds, int k_from) {
  Real acc(0.0, rp.prec);
  for (int l = k_from; l <= rp.K() - 1; ++l) {
    const Real rl = radius_r(rp, l);
    const Real term = pow_ui(rl, static_cast<unsigned long>(2 * rp.n(l))) *
                      norm_one(lds[static_cast<size_t>(l)].d) * tau(rp, lds, l);
    acc += term;
  }
  return acc;
}

GenericityResult genericity_check(const NodeLevel& level, const Complex& alpha, const Real& tol) {
  const mpfr_prec_t pr = level.prec() > alpha.prec() ? level.prec() : alpha.prec();
  const std::vector<Complex> lambda = lagrange_weights(level);
  const int n = level.n();

  GenericityResult res;
  Complex s1(pr), s2(pr);
  for (size_t m = 0; m < level.nodes().size(); ++m) {
    const Complex am = Complex(1.0, 0.0, pr) / (alpha - level.nodes()[m]);
    s1 += lambda[m] * am;
    Complex tn(1.0, 0.0, pr);
    for (int i = 0; i < n; ++i) tn *= level.nodes()[m];
    s2 += lambda[m] * tn * am;
  }
  res.s1 = s1;
  res.s2 = s2;
  res.ok = s1.abs() > tol && s2.abs() > tol;
  return res;
}

AdversaryFunction build_coefficients(const ResolvedPlan& rp, const std::vector<LevelData>& lds,
                                     const std::vector<Real>& mu) {
  const int K = rp.K();
  if (static_cast<int>(mu.size()) != K + 1)
    fail(errc::parse_error, "mu must have exactly K+1 entries");
  for (const auto& m : mu)
    if (!(m > Real(0.0, rp.prec))) fail(errc::parse_error, "every mu_k must be strictly positive");
  // the block layout is collision-free iff the degree ladder is; re-assert it
  // here because callers may hand-build resolved plans
  for (int k = 0; k < K; ++k)
    if (rp.n(k + 1) <= 2 * rp.n(k)) fail(errc::block_overlap, "coefficient blocks would overlap");

  AdversaryFunction f;
  f.mu = mu;
  f.per_level = lds;
  f.coeffs = Series(2 * rp.n(K), rp.prec);
  for (int m = 0; m <= rp.P.degree(); ++m)
    f.coeffs.coeffs()[static_cast<size_t>(m)] = rp.P.coeff(static_cast<size_t>(m));
  for (int k = 0; k <= K; ++k) {
    const auto& d = lds[static_cast<size_t>(k)].d;
    for (int j = 0; j <= rp.n(k); ++j)
      f.coeffs.coeffs()[static_cast<size_t>(rp.n(k) + j)] = d[static_cast<size_t>(j)] * mu[static_cast<size_t>(k)];
  }
  return f;
}

Decomposition decompose_system(const ResolvedPlan& rp, const std::vector<LevelData>& lds,
                               const std::vector<Real>& mu, int k) {
  const NodeLevel& level = rp.levels[static_cast<size_t>(k)].level;
  const AdversaryFunction full = build_coefficients(rp, lds, mu);

  // Y sees only P and the blocks strictly below k
  Series partial(2 * rp.n(rp.K()), rp.prec);
  for (int m = 0; m <= rp.P.degree(); ++m)
    partial.coeffs()[static_cast<size_t>(m)] = rp.P.coeff(static_cast<size_t>(m));
  for (int h = 0; h < k; ++h) {
    const auto& d = lds[static_cast<size_t>(h)].d;
    for (int j = 0; j <= rp.n(h); ++j)
      partial.coeffs()[static_cast<size_t>(rp.n(h) + j)] = d[static_cast<size_t>(j)] * mu[static_cast<size_t>(h)];
  }

  Decomposition dec;
  dec.y = build_system(partial, level);
  const Matrix m_full = build_system(full.coeffs, level);
  dec.s = m_full - dec.y - lds[static_cast<size_t>(k)].u * mu[static_cast<size_t>(k)];
  return dec;
}

std::vector<ProbeRow> nullvector_limit_probe(const NodeLevel& level, const Complex& alpha,
                                             const Matrix& m, const std::vector<Real>& eps_list) {
  const mpfr_prec_t pr = m.prec();
  const LevelData ld = level_data(level, alpha);
  const std::vector<Complex> limit = normalize_maxmod(ld.limit_vec, pr);

  std::vector<ProbeRow> rows;
  for (const auto& eps : eps_list) {
    ProbeRow row;
    row.eps = eps;
    try {
      const WeightSolution ws = solve_weights(m + ld.u * eps);
      Real dist(0.0, pr);
      for (size_t j = 0; j < limit.size(); ++j)
        dist = max(dist, (ws.weights[j] - limit[j]).abs());
      row.distance = dist;
    } catch (const error& e) {
      if (e.code() != errc::degenerate_system) throw;
      row.degenerate = true;  // isolated bad eps values are expected to exist
    }
    rows.push_back(row);
  }
  return rows;
}

CertificateBundle search_mu(const AdversaryPlan& plan) {
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(plan.precision);
  int doublings = 0;
  CertificateBundle best;  // last fully-assembled failing attempt, for diagnosis
  best.plan = plan;

  for (;;) {
    ResolvedPlan rp = resolve_plan(plan, prec);
    const int K = rp.K();

    // restore genericity of each alpha by a deterministic perturbation ladder
    std::vector<AlphaPerturbation> perturbations;
    for (int k = 0; k <= K; ++k) {
      auto& lvl = rp.levels[static_cast<size_t>(k)];
      const Real gtol = rp.genericity_tol.is_zero()
                            ? quarter_rel(prec) * (Real(1.0, prec) + lvl.alpha.abs())
                            : rp.genericity_tol;
      const Complex alpha0 = lvl.alpha;
      int attempt = 0;
      for (;;) {
        if (alpha_clear_of_all_nodes(rp, lvl.alpha) &&
            genericity_check(lvl.level, lvl.alpha, gtol).ok)
          break;
        ++attempt;
        if (attempt > 8) {
          best.precision_used = prec;
          throw search_exhausted_error(
              "genericity of alpha_" + std::to_string(k) + " not restored after 8 perturbations",
              best);
        }
        const Real step = rp.eps[static_cast<size_t>(rp.n(k))] / Real(8.0, prec);
        const Real phase =
            Real::pi(prec) * Real(static_cast<long>(attempt), prec) / Real(7.0, prec);
        lvl.alpha = alpha0 + Complex::unit(phase) * step;
      }
      if (attempt > 0) perturbations.push_back(AlphaPerturbation{k, alpha0, lvl.alpha, attempt});
    }

    std::vector<LevelData> lds;
    for (int k = 0; k <= K; ++k) {
      LevelData ld = level_data(rp.levels[static_cast<size_t>(k)].level,
                                rp.levels[static_cast<size_t>(k)].alpha);
      ld.k = k;
      ld.r = radius_r(rp, k);
      lds.push_back(std::move(ld));
    }
    for (int k = 0; k <= K; ++k) lds[static_cast<size_t>(k)].tau_prev = tau(rp, lds, k - 1);

    std::vector<Real> mu;
    for (int k = 0; k <= K; ++k) mu.push_back(lds[static_cast<size_t>(k)].tau_prev);

    const Real cert_tol = default_or(rp.cert_tol, third_rel(prec));
    const Real shrink_floor = quarter_rel(prec);  // cumulative-shrink budget per level
    std::vector<Real> shrink_total(static_cast<size_t>(K) + 1, Real(1.0, prec));
    int retries = 0;
    bool precision_bump = false;

    while (!precision_bump) {
      const AdversaryFunction f = build_coefficients(rp, lds, mu);
      CertificateBundle bundle;
      bundle.plan = plan;
      bundle.perturbations = perturbations;
      bundle.precision_used = prec;
      bundle.function = f;

      int fail_level = -1;
      bool degenerate = false;
      for (int k = 0; k <= K && fail_level < 0 && !degenerate; ++k) {
        const auto& lvl = rp.levels[static_cast<size_t>(k)];
        PoleCertificate cert;
        cert.k = k;
        cert.mu_k = mu[static_cast<size_t>(k)];
        cert.eps_at_nk = rp.eps[static_cast<size_t>(rp.n(k))];
        try {
          const BaryRational r =
              approximant_from_series(f.coeffs, lvl.level, rp.zero_weight_tol);
          for (int j : r.zero_weight_indices)
            bundle.warnings.push_back("level " + std::to_string(k) + ": weight at node " +
                                      std::to_string(j) +
                                      " is numerically zero; interpolation there is not guaranteed");
          cert.contact_pass = contact_check(f.coeffs, r, rp.contact_tol).pass;

          const PoleLocation loc = pole_near(r, lvl.alpha, cert_tol);
          cert.pi = loc.pole;
          cert.q_residual = loc.q_residual;
          cert.q_deriv_mod = loc.q_deriv_mod;
          cert.dist_to_alpha = (loc.pole - lvl.alpha).abs();
          cert.p_at_pi_mod = p_eval_direct(r, loc.pole).abs();

          Real maxwf(0.0, prec);
          for (size_t j = 0; j < r.weights.size(); ++j)
            maxwf = max(maxwf, (r.weights[j] * r.values[j]).abs());
          cert.p_floor = quarter_rel(prec) * maxwf / min_node_dist(r.level, loc.pole);

          cert.pass = cert.contact_pass && cert.dist_to_alpha <= cert.eps_at_nk &&
                      cert.q_residual <= cert_tol && cert.p_at_pi_mod >= cert.p_floor &&
                      cert.q_deriv_mod >= cert.p_floor;
        } catch (const error& e) {
          if (e.code() == errc::degenerate_system) {
            degenerate = true;  // pivot under the floor: a precision problem, not a mu problem
          } else if (e.code() == errc::no_pole || e.code() == errc::non_convergence ||
                     e.code() == errc::derivative_underflow || e.code() == errc::pole_hit) {
            cert.dist_to_alpha = Real::infinity(prec);
            cert.q_residual = Real::infinity(prec);
          } else {
            throw;
          }
          cert.pass = false;
        }
        bundle.certs.push_back(cert);
        if (!degenerate && !cert.pass) fail_level = k;
      }

      if (fail_level < 0 && !degenerate) {
        bool zeros_ok = false, bounds_ok = false;
        bundle.global_coefficient_check =
            coefficient_discipline(rp, f.coeffs, &zeros_ok, &bounds_ok);
        bundle.all_pass = bundle.global_coefficient_check;
        return bundle;
      }

      best = bundle;
      if (degenerate || fail_level == K) {
        // either the pivots drowned or there is no later mu to shrink: only
        // more precision can help
        precision_bump = true;
      } else {
        ++retries;
        if (retries > rp.max_retries)
          throw search_exhausted_error("mu retry budget (" + std::to_string(rp.max_retries) +
                                           ") exhausted at level " + std::to_string(fail_level),
                                       best);
        bool floor_hit = false;
        for (int h = fail_level + 1; h <= K; ++h) {
          mu[static_cast<size_t>(h)] *= rp.shrink;
          shrink_total[static_cast<size_t>(h)] *= rp.shrink;
          if (shrink_total[static_cast<size_t>(h)] <= shrink_floor) floor_hit = true;
        }
        if (floor_hit) precision_bump = true;  // mu shrank past representational sense
      }
    }

    ++doublings;
    if (doublings > rp.max_precision_doublings)
      throw search_exhausted_error("precision-doubling budget (" +
                                       std::to_string(rp.max_precision_doublings) + ") exhausted",
                                   best);
    prec *= 2;
  }
}

VerifyReport verify_certificate(const CertificateBundle& bundle) {
  const mpfr_prec_t prec = bundle.precision_used;
  if (prec < kMinPrec) fail(errc::parse_error, "bundle lacks a usable precision_used");
  ResolvedPlan rp = resolve_plan(bundle.plan, prec);
  const int K = rp.K();
  if (static_cast<int>(bundle.certs.size()) != K + 1)
    fail(errc::parse_error, "bundle must carry exactly one certificate per level");
  for (int k = 0; k <= K; ++k)
    if (bundle.certs[static_cast<size_t>(k)].k != k)
      fail(errc::parse_error, "certificate levels out of order");

  // the search certifies against the (recorded) perturbed alphas
  for (const auto& p : bundle.perturbations) {
    if (p.k < 0 || p.k > K) fail(errc::parse_error, "perturbation record for unknown level");
    rp.levels[static_cast<size_t>(p.k)].alpha = p.used;
  }

  const Real cert_tol = default_or(rp.cert_tol, third_rel(prec));
  VerifyReport report;
  report.pass = true;

  for (int k = 0; k <= K; ++k) {
    const auto& cert = bundle.certs[static_cast<size_t>(k)];
    const auto& lvl = rp.levels[static_cast<size_t>(k)];
    VerifyLevelReport rep;
    rep.k = k;
    try {
      // weights are re-derived from the stored coefficients; nothing else in
      // the bundle is trusted
      const BaryRational r =
          approximant_from_series(bundle.function.coeffs, lvl.level, rp.zero_weight_tol);
      rep.contact_pass = contact_check(bundle.function.coeffs, r, rp.contact_tol).pass;

      rep.q_residual = q_eval_direct(r, cert.pi).abs();
      rep.q_deriv_mod = q_deriv_direct(r, cert.pi).abs();
      rep.p_at_pi_mod = p_eval_direct(r, cert.pi).abs();
      rep.dist_to_alpha = (cert.pi - lvl.alpha).abs();

      Real maxwf(0.0, prec);
      for (size_t j = 0; j < r.weights.size(); ++j)
        maxwf = max(maxwf, (r.weights[j] * r.values[j]).abs());
      const Real p_floor = quarter_rel(prec) * maxwf / min_node_dist(lvl.level, cert.pi);

      rep.q_pass = rep.q_residual <= cert_tol;
      rep.deriv_pass = rep.q_deriv_mod >= p_floor;
      rep.p_pass = rep.p_at_pi_mod >= p_floor;
      rep.dist_pass = rep.dist_to_alpha <= rp.eps[static_cast<size_t>(rp.n(k))];
      rep.pass = rep.contact_pass && rep.q_pass && rep.deriv_pass && rep.p_pass && rep.dist_pass;
    } catch (const error&) {
      rep.pass = false;  // verification failures are report entries, not exceptions
    }
    if (!rep.pass) report.pass = false;
    report.levels.push_back(rep);
  }

  coefficient_discipline(rp, bundle.function.coeffs, &report.coeff_zeros_pass,
                         &report.coeff_bounds_pass);
  if (!report.coeff_zeros_pass || !report.coeff_bounds_pass) report.pass = false;
  return report;
}

}  // namespace barypade
