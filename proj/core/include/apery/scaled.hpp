#ifndef APERY_SCALED_HPP
#define APERY_SCALED_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace apery {

/// A complex number kept as its logarithm, so that factors like (1+√2)^{4n}
/// stay representable for any n. The imaginary part of log_value is not reduced.
struct LogComplex {
  std::complex<long double> log_value;

  long double log_abs() const { return log_value.real(); }

  /// Argument reduced to (-π, π].
  long double arg() const {
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double a = std::remainder(log_value.imag(), two_pi);
    if (a <= -std::numbers::pi_v<long double>) a += two_pi;
    return a;
  }

  /// Ordinary value; overflows to inf beyond the double range.
  std::complex<double> value() const {
    const auto v = std::exp(std::complex<long double>(log_value.real(), arg()));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }

  /// this / other, well defined even when both are astronomically large.
  std::complex<long double> ratio_to(const LogComplex& other) const {
    return std::exp(std::complex<long double>(log_abs() - other.log_abs(), arg() - other.arg()));
  }

  LogComplex& operator*=(const LogComplex& o) {
    log_value += o.log_value;
    return *this;
  }
};

/// A signed real kept as (log|x|, sign).
struct LogReal {
  long double log_abs = 0;
  int sign = 0;

  double value() const {
    return sign == 0 ? 0.0 : sign * static_cast<double>(std::exp(log_abs));
  }

  /// this / other as a plain real.
  long double ratio_to(const LogReal& other) const {
    if (other.sign == 0) return std::numeric_limits<long double>::infinity();
    if (sign == 0) return 0.0L;
    return static_cast<long double>(sign * other.sign) * std::exp(log_abs - other.log_abs);
  }

  /// 2·Re(z) of a log-scaled complex number.
  static LogReal twice_real_part(const LogComplex& z) {
    const long double c = std::cos(z.arg());
    if (c == 0.0L) return {};
    return {z.log_abs() + std::numbers::ln2_v<long double> + std::log(std::fabs(c)), c > 0 ? 1 : -1};
  }
};

}  // namespace apery

#endif  // APERY_SCALED_HPP
