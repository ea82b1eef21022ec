#pragma once

#include <vector>

#include "barypade/linalg.hpp"
#include "barypade/poly.hpp"
#include "barypade/scalar.hpp"

namespace barypade {

/// Interpolation nodes for one approximant degree n (n+1 points). Constructing
/// a NodeLevel validates the geometry once; everything downstream relies on it:
///   - every node stays clear of the origin (the Taylor expansions at 0 need
///     1/x_j), and
///   - nodes are pairwise separated by more than 2^(-prec/4) * (1 + max|x_j|).
class NodeLevel {
 public:
  explicit NodeLevel(std::vector<Complex> nodes);

  int n() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<Complex>& nodes() const { return nodes_; }
  const Complex& node(int j) const { return nodes_[static_cast<size_t>(j)]; }
  mpfr_prec_t prec() const;
  /// Separation threshold the constructor enforced (absolute).
  Real separation() const;
  /// max_j |x_j|.
  Real max_modulus() const;

 private:
  std::vector<Complex> nodes_;
};

/// Degree-n barycentric rational r = p/q with
///   p(z) = sum_j w_j f_j / (z - x_j),   q(z) = sum_j w_j / (z - x_j).
/// Weights are canonically normalized: the entry of maximal modulus (lowest
/// index on ties) is exactly 1.
struct BaryRational {
  NodeLevel level;
  std::vector<Complex> weights;
  std::vector<Complex> values;            // f(x_j), same order as the nodes
  std::vector<int> zero_weight_indices;   // nodes whose interpolation is not guaranteed
};

struct WeightSolution {
  std::vector<Complex> weights;
  std::vector<int> zero_weight_indices;
};

/// Result of checking f*q = p + O(z^n) coefficient by coefficient.
struct ContactReport {
  int order_target = 0;
  std::vector<Complex> residual_coeffs;  // coefficients 0..n-1 of f*q - p
  Real max_rel_residual;
  bool pass = false;
};

struct PoleLocation {
  Complex pole;
  Real q_residual;   // |q(pole)|
  Real q_deriv_mod;  // |q'(pole)|, evidence the zero is simple
};

/// Tail sum sum_{k=n-i}^{N} c_k x^{k-n+i}, Horner-evaluated from the top
/// index down. This is the (i, j)-entry generator of the order-condition
/// system. Requires 0 <= i < n.
Complex tail_sum(const Series& c, const Complex& x, int n, int i);

/// n x (n+1) order-condition matrix: entry (i, j) = tail_sum(c, x_j, n, i).
/// A vector in its nullspace is a valid weight vector for the degree-n
/// approximant of the series c.
/// Throws insufficient_truncation when c carries fewer than n+1 coefficients;
/// shorter series silently drop conditions, which is never what a caller wants.
Matrix build_system(const Series& c, const NodeLevel& level);

/// Nullvector of the order-condition matrix, canonically normalized.
/// zero_weight_tol (relative to the max weight; 0 selects the default
/// 2^(-prec/2)) flags weights too small to guarantee interpolation at their
/// node. Throws degenerate_system when rank < n: the nullspace has dimension
/// > 1 and no unique approximant exists.
WeightSolution solve_weights(const Matrix& m, const Real& zero_weight_tol = Real());

/// build_system + solve_weights + node values in one step; values are the
/// truncated series evaluated at the nodes.
BaryRational approximant_from_series(const Series& c, const NodeLevel& level,
                                     const Real& zero_weight_tol = Real());

/// r(z) = p(z)/q(z). Landing on a node (within the separation threshold)
/// returns the interpolated value when that node's weight is nonzero. Exactly
/// zero weights drop out of both sums (their terms are the zero function).
/// Throws pole_hit when |q(z)| collapses below the pivot floor while |p(z)|
/// does not.
Complex bary_eval(const BaryRational& r, const Complex& z);

/// Taylor coefficients 0..N of q (resp. p) around 0:
///   q_h = -sum_j w_j x_j^{-(h+1)},   p_h = -sum_j w_j f_j x_j^{-(h+1)}.
Series q_taylor(const BaryRational& r, int N);
Series p_taylor(const BaryRational& r, int N);

/// Verifies the order of contact: the first n coefficients of f*q - p must
/// vanish relative to the size of the f*q prefix (floor 1). contact_tol = 0
/// selects the default 2^(-prec/2).
ContactReport contact_check(const Series& c, const BaryRational& r,
                            const Real& contact_tol = Real());

/// All finite zeros of q, computed from the numerator polynomial
/// sum_j w_j prod_{i != j} (z - x_i). Zeros within the separation threshold
/// of a node are removable (they cancel the barycentric pole) and are
/// discarded. A constant numerator yields the empty list.
std::vector<Complex> q_poles(const BaryRational& r);

/// Locates the zero of q closest to `target` via Newton on (q, q'), falling
/// back to q_poles selection if the iteration stalls. The result must lie
/// within the trust radius |target| + diameter(nodes) and clear of all nodes;
/// otherwise no_pole. `target` itself must not sit on a node (alpha_on_node).
PoleLocation pole_near(const BaryRational& r, const Complex& target, const Real& tol);

}  // namespace barypade
