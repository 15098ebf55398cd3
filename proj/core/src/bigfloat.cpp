#include "apery/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace apery {

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(mpfr_prec_t bits, double value) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(mpfr_prec_t bits, const mpz_class& value, mpfr_rnd_t rnd) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, value.get_mpz_t(), rnd);
}

BigFloat::BigFloat(mpfr_prec_t bits, const mpq_class& value, mpfr_rnd_t rnd) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), rnd);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // MPFR has no move; swap with a minimal placeholder so `other` stays valid.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

long double BigFloat::log_abs() const {
  if (mpfr_zero_p(value_)) return -std::numeric_limits<long double>::infinity();
  long exponent = 0;
  const long double mantissa = std::fabs(mpfr_get_ld_2exp(&exponent, value_, MPFR_RNDN));
  return std::log(mantissa) + static_cast<long double>(exponent) * std::numbers::ln2_v<long double>;
}

std::string BigFloat::to_string(int digits) const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, value_);
  std::unique_ptr<char, decltype(&mpfr_free_str)> owned(raw, &mpfr_free_str);
  return std::string(raw);
}

long double BigComplex::log_abs() const {
  const mpfr_prec_t bits = precision();
  BigFloat modulus(bits);
  mpfr_hypot(modulus.get(), re.get(), im.get(), MPFR_RNDN);
  return modulus.log_abs();
}

long double BigComplex::arg() const {
  // atan2 on the 2^k-scaled parts keeps the angle exact even when |z| is far
  // outside the long double range.
  const long e_re = mpfr_zero_p(re.get()) ? std::numeric_limits<long>::min() : mpfr_get_exp(re.get());
  const long e_im = mpfr_zero_p(im.get()) ? std::numeric_limits<long>::min() : mpfr_get_exp(im.get());
  const long shift = std::max(e_re, e_im);
  if (shift == std::numeric_limits<long>::min()) return 0.0L;
  BigFloat x(re), y(im);
  mpfr_div_2si(x.get(), x.get(), shift, MPFR_RNDN);
  mpfr_div_2si(y.get(), y.get(), shift, MPFR_RNDN);
  return std::atan2(y.to_long_double(), x.to_long_double());
}

}  // namespace apery
