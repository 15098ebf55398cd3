#include "apery/asymptotics.hpp"

#include "apery/errors.hpp"

#include <string>

namespace apery::asymptotics {

namespace {

using cld = std::complex<long double>;

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;

bool on_cut(std::complex<long double> z) { return z.imag() == 0.0L && z.real() <= 0.0L; }

// log of (1+u+w)² / (2 (2πn w)^{3/2}) · (1+2u+2w)^{2n}, where u = √z and w = √(z+√z)
// on whichever branch the caller has fixed.
LogComplex leading_form(unsigned n, cld u, cld w) {
  const long double nn = static_cast<long double>(n);
  cld log_value = 2.0L * std::log(1.0L + u + w) - kLn2 - 1.5L * std::log(2.0L * kPi * nn * w) +
                  2.0L * nn * std::log(1.0L + 2.0L * u + 2.0L * w);
  return LogComplex{log_value};
}

// Envelope and phase from θ together with s = sin(πθ/2), c = cos(πθ/2).
OscillatoryForm oscillatory_from_trig(unsigned n, long double x, long double theta, long double s,
                                      long double c) {
  if (n < 1) throw DomainError("oscillatory_approx: n must be at least 1");
  const long double nn = static_cast<long double>(n);
  const long double t = s / c;
  const long double envelope_shape =
      (1.0L + s) * (1.0L + 0.5L * t * t) / std::pow(0.5L * t * std::sqrt(1.0L + c * c), 1.5L);
  OscillatoryForm out;
  out.n = n;
  out.x = static_cast<double>(x);
  out.theta = static_cast<double>(theta);
  out.log_envelope = -1.5L * std::log(2.0L * kPi * nn) + std::log(envelope_shape) +
                     2.0L * nn * std::log((1.0L + s) / c);
  const long double f = 2.0L * std::atan(t * (1.0L + s) / (2.0L + s)) - 1.5L * std::atan(1.0L / c);
  out.phase = f + nn * kPi * theta;
  out.domain_warning = theta < kThetaMargin || theta > 1.0 - kThetaMargin;
  return out;
}

}  // namespace

namespace detail {

void throw_theta_domain(double theta) {
  throw DomainError("theta must lie in (0, 1), got " + std::to_string(theta));
}

void throw_x_domain(double x) {
  throw DomainError("x must be positive and finite, got " + std::to_string(x));
}

}  // namespace detail

std::complex<double> sqrt_principal(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    throw DomainError("sqrt_principal: argument on the branch cut (-inf, 0]");
  }
  return std::sqrt(z);
}

std::complex<long double> sqrt_from_above(std::complex<long double> z) {
  if (z.imag() == 0.0L && z.real() < 0.0L) return {0.0L, std::sqrt(-z.real())};
  if (z.imag() == 0.0L) return {std::sqrt(z.real()), 0.0L};
  return std::sqrt(z);
}

std::complex<double> sqrt_from_above(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
  if (z.imag() == 0.0) return {std::sqrt(z.real()), 0.0};
  return std::sqrt(z);
}

BranchedPoint BranchedPoint::at(std::complex<double> z) {
  const auto root = sqrt_principal(z);
  const auto outer = std::sqrt(z + root);
  return {z, outer - root, outer + root};
}

NegativeAxisPoint NegativeAxisPoint::from_x(double x) {
  const double theta = theta_from_x(x);
  const std::complex<double> root(0.0, std::sqrt(x));
  const auto outer = std::sqrt(std::complex<double>(-x, root.imag()));
  return {x, theta, outer - root, outer + root};
}

NegativeAxisPoint NegativeAxisPoint::from_theta(double theta) {
  NegativeAxisPoint p = from_x(x_from_theta(theta));
  p.theta = theta;
  return p;
}

long double phase_shift(long double theta) {
  if (!(theta > 0.0L && theta < 1.0L)) detail::throw_theta_domain(static_cast<double>(theta));
  const long double phi = kPi * theta / 2.0L;
  const long double s = std::sin(phi);
  const long double c = std::sin(kPi * (1.0L - theta) / 2.0L);
  return 2.0L * std::atan((s / c) * (1.0L + s) / (2.0L + s)) - 1.5L * std::atan(1.0L / c);
}

double phase_shift(double theta) {
  return static_cast<double>(phase_shift(static_cast<long double>(theta)));
}

LogComplex leading_term(unsigned n, std::complex<double> z) {
  if (n < 1) throw DomainError("leading_term: n must be at least 1");
  const cld zl(z.real(), z.imag());
  if (on_cut(zl)) throw DomainError("leading_term: z lies on the cut (-inf, 0]");
  const cld u = std::sqrt(zl);
  const cld w = std::sqrt(zl + u);
  return leading_form(n, u, w);
}

LogComplex classical_estimate(unsigned n) {
  if (n < 1) throw DomainError("classical_estimate: n must be at least 1");
  const long double nn = static_cast<long double>(n);
  const long double sqrt2 = std::numbers::sqrt2_v<long double>;
  const long double log_value =
      (4.0L * nn + 2.0L) * std::log(1.0L + sqrt2) - 1.5L * std::log(2.0L * kPi * nn * sqrt2);
  return LogComplex{cld(log_value, 0.0L)};
}

LogComplex continued_leading_term(unsigned n, double x) {
  if (n < 1) throw DomainError("continued_leading_term: n must be at least 1");
  if (!(x > 0.0)) detail::throw_x_domain(x);
  const long double xl = x;
  const cld u(0.0L, std::sqrt(xl));
  const cld w = std::sqrt(cld(-xl, u.imag()));
  return leading_form(n, u, w);
}

LogReal OscillatoryForm::value() const {
  const long double c = std::cos(phase);
  if (c == 0.0L) return {};
  return {log_envelope + std::log(std::fabs(c)), c > 0 ? 1 : -1};
}

OscillatoryForm oscillatory_approx(unsigned n, double x) {
  const long double xl = x;
  const long double theta = theta_from_x(xl);
  // sin² φ = 2x/D, cos φ = √x/D with D = √(x²+x) + x
  const long double d = std::sqrt(xl * xl + xl) + xl;
  const long double s = std::sqrt(2.0L * xl / d);
  const long double c = std::sqrt(xl) / d;
  return oscillatory_from_trig(n, xl, theta, s, c);
}

OscillatoryForm oscillatory_approx_theta(unsigned n, double theta) {
  const long double th = theta;
  const long double x = x_from_theta(th);
  const long double s = std::sin(kPi * th / 2.0L);
  const long double c = std::sin(kPi * (1.0L - th) / 2.0L);
  return oscillatory_from_trig(n, x, th, s, c);
}

double solve_phase(unsigned n, long double target) {
  const long double nn = static_cast<long double>(n);
  const long double lower = -3.0L * kPi / 8.0L;
  const long double upper = kPi / 4.0L + nn * kPi;
  if (!(target > lower && target < upper)) {
    throw RangeError("solve_phase: target phase outside the range swept by theta in (0, 1)");
  }
  long double lo = 0.0L;
  long double hi = 1.0L;
  for (int iter = 0; iter < 200; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (phase_shift(mid) + nn * kPi * mid < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

double predicted_zero_theta(unsigned n, int k) {
  if (n < 1 || k < 0 || k >= static_cast<int>(n)) {
    throw RangeError("predicted_zero: k must lie in [0, n-1]");
  }
  return solve_phase(n, kPi / 2.0L + static_cast<long double>(k) * kPi);
}

double predicted_zero(unsigned n, int k) { return -x_from_theta(predicted_zero_theta(n, k)); }

}  // namespace apery::asymptotics
