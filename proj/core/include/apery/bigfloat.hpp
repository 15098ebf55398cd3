#ifndef APERY_BIGFLOAT_HPP
#define APERY_BIGFLOAT_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>

namespace apery {

/// Owning value wrapper around an mpfr_t with a fixed precision.
///
/// Arithmetic goes through the raw MPFR API on get(); the wrapper only manages
/// lifetime and offers the few conversions the library needs. Copies keep the
/// source precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(mpfr_prec_t bits, double value);
  BigFloat(mpfr_prec_t bits, const mpz_class& value, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(mpfr_prec_t bits, const mpq_class& value, mpfr_rnd_t rnd = MPFR_RNDN);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  /// Nearest double; overflows to ±inf for huge values.
  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const noexcept { return mpfr_get_ld(value_, MPFR_RNDN); }

  /// Natural log of |x| as a long double, valid far outside the double range.
  /// Returns -inf for zero.
  long double log_abs() const;

  std::string to_string(int digits = 20) const;

 private:
  mpfr_t value_;
};

/// Complex number with BigFloat parts of equal precision.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t bits) : re(bits), im(bits) {}

  mpfr_prec_t precision() const noexcept { return re.precision(); }

  /// log|z| as a long double; -inf for zero.
  long double log_abs() const;
  /// Principal argument in (-π, π].
  long double arg() const;
  /// Nearest std::complex<double>; may overflow for huge values.
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

}  // namespace apery

#endif  // APERY_BIGFLOAT_HPP
