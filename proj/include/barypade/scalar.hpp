#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace barypade {

inline constexpr mpfr_prec_t kMinPrec = 64;
inline constexpr mpfr_prec_t kDefaultPrec = 1024;

/// Arbitrary-precision real number backed by MPFR.
///
/// Every value carries its own precision. Binary operations produce a result
/// at the max precision of the operands, rounded to nearest; this makes all
/// arithmetic deterministic for fixed inputs and precisions.
class Real {
 public:
  Real() { mpfr_init2(v_, kMinPrec); mpfr_set_zero(v_, 1); }
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_zero(v_, 1); }
  Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_si(v_, x, MPFR_RNDN); }

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, kMinPrec); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  /// 2^e at the given precision (exact).
  static Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// +infinity marker (serializes as "inf"); used for unbounded residuals.
  static Real infinity(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_inf(r.v_, 1);
    return r;
  }
  /// Parses a decimal string ("-1.25e-3" style). Throws on garbage.
  static Real from_decimal(const std::string& s, mpfr_prec_t prec);

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sgn() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Decimal serialization with ceil(0.302*prec)+5 significant digits;
  /// round-trips exactly at the same precision.
  std::string to_decimal() const;
  std::string to_decimal(size_t digits) const;

  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
  friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
  friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
  friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  friend Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
  friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

  /// a^e for nonnegative integer e (r_k^{2 n_k} style factors).
  friend Real pow_ui(const Real& a, unsigned long e) {
    Real r(a.prec());
    mpfr_pow_ui(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
  }

 private:
  static mpfr_prec_t clamp(mpfr_prec_t p) { return p < kMinPrec ? kMinPrec : p; }
  using mpfr_bin_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(mpfr_bin_fn fn, const Real& a, const Real& b) {
    Real r(a.prec() > b.prec() ? a.prec() : b.prec());
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

/// Arbitrary-precision complex number (the module's Scalar). Same max-precision
/// rule as Real; parts always share one precision.
class Complex {
 public:
  Complex() : re_(), im_() {}
  explicit Complex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) { align(); }
  Complex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

  static Complex from_decimal(const std::string& re, const std::string& im, mpfr_prec_t prec) {
    return Complex(Real::from_decimal(re, prec), Real::from_decimal(im, prec));
  }
  /// cos(theta) + i sin(theta).
  static Complex unit(const Real& theta) {
    Complex r(theta.prec());
    mpfr_sin_cos(r.im_.raw(), r.re_.raw(), theta.raw(), MPFR_RNDN);
    return r;
  }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  mpfr_prec_t prec() const { return re_.prec() > im_.prec() ? re_.prec() : im_.prec(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  Complex operator-() const { return Complex(-re_, -im_); }
  Complex conj() const { return Complex(re_, -im_); }
  /// |z| via hypot.
  Real abs() const {
    Real r(prec());
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    return r;
  }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    mpfr_prec_t p = a.prec() > b.prec() ? a.prec() : b.prec();
    Complex r(p);
    // fmms/fmma keep each part correctly rounded.
    mpfr_fmms(r.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_fmma(r.im_.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    return r;
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    mpfr_prec_t p = a.prec() > b.prec() ? a.prec() : b.prec();
    Real den(p);
    mpfr_fmma(den.raw(), b.re_.raw(), b.re_.raw(), b.im_.raw(), b.im_.raw(), MPFR_RNDN);
    Complex r(p);
    mpfr_fmma(r.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_fmms(r.im_.raw(), a.im_.raw(), b.re_.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
    return Complex(r.re_ / den, r.im_ / den);
  }
  friend Complex operator*(const Complex& a, const Real& s) { return Complex(a.re_ * s, a.im_ * s); }
  friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, const Real& s) { return Complex(a.re_ / s, a.im_ / s); }

  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(const Complex& b) { return *this = *this / b; }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

 private:
  void align() {
    // keep both parts at the pair's precision so results don't drift down
    mpfr_prec_t p = prec();
    if (re_.prec() != p) {
      Real t(p);
      mpfr_set(t.raw(), re_.raw(), MPFR_RNDN);
      re_ = std::move(t);
    }
    if (im_.prec() != p) {
      Real t(p);
      mpfr_set(t.raw(), im_.raw(), MPFR_RNDN);
      im_ = std::move(t);
    }
  }

  Real re_, im_;
};

/// Digit count used for decimal serialization at a precision.
size_t decimal_digits(mpfr_prec_t prec);

/// Pivot/trim floor, relative: 2^(-prec+32). Multiply by the max modulus in scope.
inline Real pivot_rel(mpfr_prec_t prec) { return Real::pow2(-static_cast<long>(prec) + 32, prec); }
/// Node separation / genericity floor, relative: 2^(-prec/4).
inline Real quarter_rel(mpfr_prec_t prec) { return Real::pow2(-static_cast<long>(prec) / 4, prec); }
/// Default nullspace / contact tolerance: 2^(-prec/2).
inline Real half_rel(mpfr_prec_t prec) { return Real::pow2(-static_cast<long>(prec) / 2, prec); }
/// Default pole certificate tolerance: 2^(-prec/3).
inline Real third_rel(mpfr_prec_t prec) { return Real::pow2(-static_cast<long>(prec) / 3, prec); }

}  // namespace barypade
