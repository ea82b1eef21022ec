#pragma once

// Shared helpers for the unit-test binaries: tolerance checks and a portable
// deterministic RNG (raw mt19937_64 words scaled by hand, so sequences are
// identical across standard libraries).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "barypade/errors.hpp"
#include "barypade/scalar.hpp"

namespace testutil {

/// Runs f, which must throw barypade::error, and hands back the code.
/// Any other outcome surfaces as parse_error-with-a-twist: we return a
/// sentinel the caller's CHECK will reject.
template <class F>
barypade::errc thrown_code(F&& f) {
  try {
    f();
  } catch (const barypade::error& e) {
    return e.code();
  }
  return static_cast<barypade::errc>(-1);
}

using barypade::Complex;
using barypade::Real;

inline Real real_at(double x, mpfr_prec_t prec) { return Real(x, prec); }

/// |a - b| <= tol, as a plain bool so doctest can report the operands.
inline bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }
inline bool close(const Complex& a, const Complex& b, const Real& tol) {
  return (a - b).abs() <= tol;
}

/// Uniform double in [-1, 1] from raw engine output; avoids
/// std::uniform_real_distribution, whose sequences are not pinned by the
/// standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {
    // 53 random bits -> [0,1) -> [-1,1)
    const double u = static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0);
    return 2.0 * u - 1.0;
  }
  Complex complex(mpfr_prec_t prec) {
    const double re = uniform();
    const double im = uniform();
    return Complex(re, im, prec);
  }
  /// Complex in the annulus 0.3 <= |z| <= ~1.7; handy for nodes that must
  /// stay away from the origin.
  Complex annulus(mpfr_prec_t prec) {
    const double re = uniform();
    const double im = uniform();
    const double r = std::sqrt(re * re + im * im);
    if (r < 0.3) {
      // push small draws outward rather than rejecting (keeps call counts fixed)
      const double s = (r == 0.0) ? 1.0 : (0.3 + r) / r;
      return Complex(re * s + 0.05, im * s, prec);
    }
    return Complex(re, im, prec);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace testutil
