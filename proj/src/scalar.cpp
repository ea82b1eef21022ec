#include "barypade/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "barypade/errors.hpp"

namespace barypade {

size_t decimal_digits(mpfr_prec_t prec) {
  // ceil(0.302 * prec) + 5; 0.302 > log10(2), so round-trips are exact.
  return static_cast<size_t>(std::ceil(0.302 * static_cast<double>(prec))) + 5;
}

Real Real::from_decimal(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  const char* begin = s.c_str();
  char* end = nullptr;
  mpfr_strtofr(r.v_, begin, &end, 10, MPFR_RNDN);
  if (end == begin || *end != '\0')
    fail(errc::parse_error, "not a decimal number: '" + s + "'");
  return r;
}

std::string Real::to_decimal() const { return to_decimal(decimal_digits(prec())); }

std::string Real::to_decimal(size_t digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
  mpfr_exp_t e = 0;
  char* m = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(m);
  mpfr_free_str(m);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^e  ->  d.ddd e(e-1)
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

}  // namespace barypade
