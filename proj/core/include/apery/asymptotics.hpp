#ifndef APERY_ASYMPTOTICS_HPP
#define APERY_ASYMPTOTICS_HPP

// Closed-form asymptotics of the Apéry polynomials: the leading term on
// C \ (-∞, 0], the oscillatory form on the negative axis, and the θ ↔ x
// parameterisation of the negative axis.

#include "apery/scaled.hpp"

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>

namespace apery::asymptotics {

/// Lowest θ (and 1 - highest θ) where the oscillatory evaluators are trusted.
inline constexpr double kThetaMargin = 0.02;

/// Principal square root, arg ∈ (-π, π). Throws DomainError on (-∞, 0].
std::complex<double> sqrt_principal(std::complex<double> z);

/// Square root continued onto the cut from above, i.e. arg ∈ (-π, π].
/// A negative real z (either sign of zero imaginary part) maps to i·√|z|.
std::complex<double> sqrt_from_above(std::complex<double> z);
std::complex<long double> sqrt_from_above(std::complex<long double> z);

/// a(z) = √(z+√z) - √z and b(z) = √(z+√z) + √z on the principal branches.
struct BranchedPoint {
  std::complex<double> z;
  std::complex<double> a;
  std::complex<double> b;

  /// Throws DomainError for z on (-∞, 0].
  static BranchedPoint at(std::complex<double> z);
};

/// A point -x of the cut, with a and b continued from the upper half-plane:
/// a(-x) = √(-x+i√x) - i√x,  b(-x) = √(-x+i√x) + i√x.
struct NegativeAxisPoint {
  double x = 0;
  double theta = 0;
  std::complex<double> a_minus;
  std::complex<double> b_minus;

  static NegativeAxisPoint from_x(double x);
  static NegativeAxisPoint from_theta(double theta);
};

/// x = sin⁴(πθ/2) / (4 cos²(πθ/2)) for θ ∈ (0, 1).
template <std::floating_point T>
T x_from_theta(T theta);

/// Inverse of x_from_theta: θ = (2/π)·atan(√(2(√(x²+x) + x))).
///
/// This is the closed form of s = sin²(πθ/2) = 2(√(x²+x) - x) rewritten so that
/// neither end of (0, ∞) cancels.
template <std::floating_point T>
T theta_from_x(T x);

/// f(θ) = 2 atan(tan φ (1+sin φ)/(2+sin φ)) - (3/2) atan(1/cos φ), φ = πθ/2.
double phase_shift(double theta);
long double phase_shift(long double theta);

/// Leading term of B_n(z) on C \ (-∞, 0]:
///   (1+√z+√(z+√z))² / (2 (2πn √(z+√z))^{3/2}) · (1+2√z+2√(z+√z))^{2n}
LogComplex leading_term(unsigned n, std::complex<double> z);

/// (1+√2)^{4n+2} / (2πn√2)^{3/2}, the classical estimate for b_n.
LogComplex classical_estimate(unsigned n);

/// G_n(-x): the leading-term expression with every root continued from above.
LogComplex continued_leading_term(unsigned n, double x);

/// envelope · cos(phase), the oscillatory approximation of B_n(-x).
struct OscillatoryForm {
  unsigned n = 0;
  double x = 0;
  double theta = 0;
  /// log of (2πn)^{-3/2} E(θ) g(θ)^{2n}
  long double log_envelope = 0;
  /// f(θ) + nπθ
  long double phase = 0;
  /// θ outside [kThetaMargin, 1 - kThetaMargin]
  bool domain_warning = false;

  double cos_phase() const { return static_cast<double>(std::cos(phase)); }
  LogReal value() const;
};

OscillatoryForm oscillatory_approx(unsigned n, double x);
OscillatoryForm oscillatory_approx_theta(unsigned n, double theta);

/// θ ∈ (0, 1) with f(θ) + nπθ = target, found by bisection. Throws RangeError
/// when target is outside (f(0+), f(1-) + nπ).
double solve_phase(unsigned n, long double target);

/// θ of the k-th predicted zero, phase = π/2 + kπ, k = 0..n-1.
double predicted_zero_theta(unsigned n, int k);

/// Predicted k-th zero of B_n on the negative axis, counted from 0 outwards.
double predicted_zero(unsigned n, int k);

// --- template definitions ----------------------------------------------------

namespace detail {
[[noreturn]] void throw_theta_domain(double theta);
[[noreturn]] void throw_x_domain(double x);
}  // namespace detail

template <std::floating_point T>
T x_from_theta(T theta) {
  if (!(theta > T(0) && theta < T(1))) {
    detail::throw_theta_domain(static_cast<double>(theta));
  }
  const T phi = std::numbers::pi_v<T> * theta / T(2);
  const T s = std::sin(phi);
  // cos(πθ/2) = sin(π(1-θ)/2) keeps relative accuracy as θ → 1
  const T c = std::sin(std::numbers::pi_v<T> * (T(1) - theta) / T(2));
  return (s * s) * (s * s) / (T(4) * c * c);
}

template <std::floating_point T>
T theta_from_x(T x) {
  if (!(x > T(0)) || !std::isfinite(x)) {
    detail::throw_x_domain(static_cast<double>(x));
  }
  const T d = std::sqrt(x * x + x) + x;
  return T(2) / std::numbers::pi_v<T> * std::atan(std::sqrt(T(2) * d));
}

}  // namespace apery::asymptotics

#endif  // APERY_ASYMPTOTICS_HPP
