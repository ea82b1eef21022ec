#pragma once

#include <string>
#include <utility>
#include <vector>

#include "barypade/errors.hpp"
#include "barypade/linalg.hpp"
#include "barypade/pade.hpp"
#include "barypade/poly.hpp"
#include "barypade/scalar.hpp"

namespace barypade {

// ---------------------------------------------------------------------------
// Plan (source form)
//
// A plan is kept as decimal strings plus integers, not as resolved numbers:
// the search may double the working precision, and every input must then be
// re-read from its exact source rather than re-rounded from a narrower value.
// ---------------------------------------------------------------------------

struct PlanLevelSource {
  std::vector<std::pair<std::string, std::string>> nodes;  // (re, im) decimal pairs
  std::pair<std::string, std::string> alpha;
};

/// Target-modulus schedule: either eps_m = a * ratio^m or an explicit list
/// eps_0..eps_{2 n_K}.
struct EpsilonSource {
  bool is_geometric = true;
  std::string a = "1";
  std::string ratio = "0.5";
  std::vector<std::string> values;  // explicit form only
};

struct SearchParams {
  std::string shrink = "0.0625";  // per-retry factor applied to later-level mu
  int max_retries = 32;
  int max_precision_doublings = 3;
};

/// Optional overrides; an empty string selects the built-in default.
struct ToleranceSource {
  std::string contact_tol;     // default 2^(-prec/2)
  std::string cert_tol;        // default 2^(-prec/3)
  std::string zero_weight_tol; // default 2^(-prec/2)
  std::string genericity_tol;  // default 2^(-prec/4) * (1 + |alpha|), per level
};

struct AdversaryPlan {
  std::vector<std::pair<std::string, std::string>> p_coeffs;  // P, ascending degree
  std::vector<PlanLevelSource> levels;                        // k = 0..K
  EpsilonSource epsilon;
  long precision = kDefaultPrec;
  SearchParams search;
  ToleranceSource tolerances;
};

// ---------------------------------------------------------------------------
// Plan (resolved at a precision)
// ---------------------------------------------------------------------------

struct ResolvedLevel {
  NodeLevel level;
  Complex alpha;
};

struct ResolvedPlan {
  Poly P;
  std::vector<ResolvedLevel> levels;
  std::vector<Real> eps;  // eps_0 .. eps_{2 n_K}
  mpfr_prec_t prec = kDefaultPrec;
  Real shrink;
  int max_retries = 0;
  int max_precision_doublings = 0;
  // zero means "use the default formula at point of use"
  Real contact_tol, cert_tol, zero_weight_tol, genericity_tol;

  int K() const { return static_cast<int>(levels.size()) - 1; }
  int n(int k) const { return levels[static_cast<size_t>(k)].level.n(); }
};

/// Parses and cross-validates every plan field at the given precision.
/// Enforces: n_{k+1} > 2 n_k, degree(P) < n_0, eps_m > 0, node geometry per
/// NodeLevel, and every alpha_k separated from the nodes of every level.
/// Throws parse_error on structural violations, node_collision or
/// alpha_on_node on geometric ones.
ResolvedPlan resolve_plan(const AdversaryPlan& plan, mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// Per-level construction data
// ---------------------------------------------------------------------------

/// Everything the construction derives from one (level, alpha) pair, plus the
/// bound-ladder scalars the caller fills in (r, tau_prev).
struct LevelData {
  int k = -1;
  std::vector<Complex> lambda;     // barycentric Lagrange weights of the nodes
  std::vector<Complex> a;          // 1/(alpha - t_m)
  std::vector<Complex> d;          // monomial coefficients interpolating a
  std::vector<Complex> limit_vec;  // (alpha - t_m) * lambda_m
  Matrix u;                        // n x (n+1), u_{i,j} = t_j^i/(alpha - t_j)
  Real r;                          // 1 + max node modulus over levels 0..k
  Real tau_prev;                   // tau_{k-1}
};

/// lambda_m = 1/prod_{i != m} (t_i - t_m). Note the sign convention: the
/// product runs over t_i - t_m, not t_m - t_i.
std::vector<Complex> lagrange_weights(const NodeLevel& level);

/// Fills lambda, a, d, u and limit_vec (not the bound fields r/tau_prev).
/// d solves the Vandermonde system V d = a, i.e. the polynomial of degree n
/// interpolating 1/(alpha - z) at the nodes.
LevelData level_data(const NodeLevel& level, const Complex& alpha);

/// r_k = 1 + max node modulus over levels 0..k.
Real radius_r(const ResolvedPlan& rp, int k);

/// tau_k for k in [-1, K-1]:
///   min_{0<=m<=2 n_{k+1}} eps_m /
///     [ (1 + sum_{m<=2 n_{k+1}} eps_m) * r_{k+1}^{2 n_{k+1}}
///       * (1 + ||d_{k+1}||_1) * (1 + n_{k+1})! ]
/// with the denominator accumulated rounding up and the final division
/// rounding toward zero, so the returned value never overestimates.
Real tau(const ResolvedPlan& rp, const std::vector<LevelData>& lds, int k);

/// Truncation of the series sum_l r_l^{2 n_l} ||d_l||_1 tau_l to the levels
/// whose tau is computable (l <= K-1); a lower bound of the full sum.
Real chi_partial(const ResolvedPlan& rp, const std::vector<LevelData>& lds, int k_from);

struct GenericityResult {
  bool ok = false;
  Complex s1;  // sum_m lambda_m / (alpha - t_m)
  Complex s2;  // sum_m lambda_m t_m^n / (alpha - t_m)
};

/// Both sums must stay away from zero (modulus > tol) for the construction's
/// non-degeneracy argument to apply at this level.
GenericityResult genericity_check(const NodeLevel& level, const Complex& alpha, const Real& tol);

// ---------------------------------------------------------------------------
// The adversarial function and its systems
// ---------------------------------------------------------------------------

struct AdversaryFunction {
  Series coeffs;            // truncation 2 n_K: P plus all mu_k-scaled blocks
  std::vector<Real> mu;     // mu_0..mu_K, all > 0
  std::vector<LevelData> per_level;
};

/// coeffs[m] = P_m for m <= deg P, and mu_k * d_{k, m-n_k} for
/// n_k <= m <= 2 n_k; zero in the gaps. Blocks never collide (guaranteed by
/// n_{k+1} > 2 n_k); a collision raises block_overlap as an internal check.
AdversaryFunction build_coefficients(const ResolvedPlan& rp, const std::vector<LevelData>& lds,
                                     const std::vector<Real>& mu);

struct Decomposition {
  Matrix y;  // system of P + blocks below k only
  Matrix s;  // M - Y - mu_k * U: the later-block contamination
};

/// Splits the level-k order-condition matrix M as Y + mu_k U + S.
Decomposition decompose_system(const ResolvedPlan& rp, const std::vector<LevelData>& lds,
                               const std::vector<Real>& mu, int k);

struct ProbeRow {
  Real eps;
  Real distance;           // max-norm gap to the normalized limit vector
  bool degenerate = false; // solve failed at this eps (isolated bad values exist)
};

/// For each eps, solves the weights of M + eps*U and measures the distance to
/// the canonically normalized limit vector. Test-harness support for the
/// nullvector-limit law.
std::vector<ProbeRow> nullvector_limit_probe(const NodeLevel& level, const Complex& alpha,
                                             const Matrix& m, const std::vector<Real>& eps_list);

// ---------------------------------------------------------------------------
// Certificates and the mu search
// ---------------------------------------------------------------------------

struct PoleCertificate {
  int k = 0;
  Real mu_k;
  Complex pi;          // verified pole of the degree-n_k approximant
  Real dist_to_alpha;  // |pi - alpha_k|
  Real eps_at_nk;      // the bound dist_to_alpha is judged against
  Real q_residual;     // |q(pi)|
  Real q_deriv_mod;    // |q'(pi)|
  Real p_at_pi_mod;    // |p(pi)|
  Real p_floor;        // local scale floor for p and q'
  bool contact_pass = false;
  bool pass = false;
};

struct AlphaPerturbation {
  int k = 0;
  Complex original;
  Complex used;
  int attempts = 0;
};

struct CertificateBundle {
  AdversaryPlan plan;  // source echo
  std::vector<AlphaPerturbation> perturbations;
  mpfr_prec_t precision_used = 0;
  AdversaryFunction function;
  std::vector<PoleCertificate> certs;
  std::vector<std::string> warnings;  // zero-weight notices and the like
  bool global_coefficient_check = false;
  bool all_pass = false;
};

/// Raised when the retry/precision budget is spent; carries the best failing
/// bundle so callers can persist it for diagnosis.
class search_exhausted_error : public error {
 public:
  search_exhausted_error(const std::string& what, CertificateBundle b)
      : error(errc::search_exhausted, what), bundle(std::move(b)) {}
  CertificateBundle bundle;
};

/// Deterministic mu-selection:
///   1. resolve the plan, restore genericity of each alpha_k (bounded
///      deterministic perturbation schedule, recorded in the bundle),
///   2. initialize mu_k = tau_{k-1},
///   3. certify each level from the full truncated series,
///   4. on a level-k failure shrink every later mu and retry; when shrinking
///      stops making representational sense, double the precision and restart,
///   5. on success run the global coefficient checks and return.
CertificateBundle search_mu(const AdversaryPlan& plan);

struct VerifyLevelReport {
  int k = 0;
  bool contact_pass = false;
  bool dist_pass = false;
  bool q_pass = false;
  bool deriv_pass = false;
  bool p_pass = false;
  bool pass = false;
  Real dist_to_alpha, q_residual, q_deriv_mod, p_at_pi_mod;
};

struct VerifyReport {
  std::vector<VerifyLevelReport> levels;
  bool coeff_zeros_pass = false;   // c_m = P_m below n_0, exact zeros in gaps
  bool coeff_bounds_pass = false;  // |c_m| <= eps_m for m >= n_0
  bool pass = false;
};

/// Re-derives everything from bundle.function.coeffs and the plan echo —
/// stored weights and residuals are never trusted. The stored pole locations
/// are re-tested in place (q, q', p and the distance bound).
VerifyReport verify_certificate(const CertificateBundle& bundle);

}  // namespace barypade
