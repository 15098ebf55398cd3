#include "apery/measures.hpp"

#include "apery/asymptotics.hpp"
#include "apery/errors.hpp"
#include "apery/exact.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace apery::zeros {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Substituted ν and μ integrands; each is bounded on its closed interval.

// ν on [-1, 0], x = s² - 1
double nu_left(double s) {
  const double r = 2.0 - s * s;
  return 2.0 / (kPi * std::pow(r, 0.75) * std::sqrt(kSqrt2 + std::sqrt(r)));
}
double nu_left_x(double s) { return s * s - 1.0; }

// ν on [0, 1], x = 1 - u⁴
double nu_right(double u) {
  return 4.0 / (kPi * std::sqrt(2.0 - u * u * u * u) * std::sqrt(kSqrt2 + u * u));
}
double nu_right_x(double u) { return 1.0 - u * u * u * u; }

// μ on [-1, 0], x = -u⁴
double mu_near(double u) {
  const double r = std::sqrt(1.0 + u * u * u * u);
  return 4.0 / (kSqrt2 * kPi * r * std::sqrt(u * u + r));
}
double mu_near_x(double u) { return -u * u * u * u; }

// μ on (-∞, -1], x = -1/y²
double mu_tail(double y) {
  const double r = std::sqrt(1.0 + y * y);
  return 2.0 / (kSqrt2 * kPi * r * std::sqrt(1.0 + r));
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

template <class F>
double gk(F f, double a, double b, double abs_tol, const char* what) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13, &error);
  if (!(error <= abs_tol) || !std::isfinite(v)) {
    throw ToleranceError(std::string(what) + ": quadrature error estimate " + sci(error) + " exceeds " +
                         sci(abs_tol));
  }
  return v;
}

template <class F>
double ts(F f, double a, double b, double abs_tol, const char* what) {
  if (a == b) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double v = integrator.integrate(f, a, b, 1e-15, &error, &l1);
  if (!(error <= abs_tol) || !std::isfinite(v)) {
    throw ToleranceError(std::string(what) + ": quadrature error estimate " + sci(error) + " exceeds " +
                         sci(abs_tol));
  }
  return v;
}

// √(z+1) + 2√(z-1) + 2√(z-1+√(z-1)√(z+1)) with arg ∈ (-π, π].
cd nu_kernel(cd z) {
  using asymptotics::sqrt_from_above;
  const cd p = sqrt_from_above(z + 1.0);
  const cd m = sqrt_from_above(z - 1.0);
  return p + 2.0 * m + 2.0 * sqrt_from_above(z - 1.0 + m * p);
}

}  // namespace

double robin_constant_nu() { return 4.0 * std::log1p(kSqrt2); }

double nu_density(double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("nu_density: x must lie in (-1, 1)");
  return 1.0 / (kPi * std::sqrt(1.0 + x) * std::pow(1.0 - x, 0.75) * std::sqrt(kSqrt2 + std::sqrt(1.0 - x)));
}

double mu_density(double x) {
  if (!(x < 0.0) || !std::isfinite(x)) throw DomainError("mu_density: x must be negative and finite");
  const double a = -x;
  return 1.0 / (kSqrt2 * kPi * std::pow(a, 0.75) * std::sqrt(1.0 + a) *
                std::sqrt(std::sqrt(a) + std::sqrt(1.0 + a)));
}

double nu_cdf(double x, double abs_tol) {
  if (std::isnan(x)) throw DomainError("nu_cdf: x is NaN");
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x <= 0.0) return gk(nu_left, 0.0, std::sqrt(1.0 + x), abs_tol, "nu_cdf");
  const double left = gk(nu_left, 0.0, 1.0, abs_tol / 2, "nu_cdf");
  return left + gk(nu_right, std::pow(1.0 - x, 0.25), 1.0, abs_tol / 2, "nu_cdf");
}

double mu_cdf(double x, double abs_tol) {
  if (std::isnan(x)) throw DomainError("mu_cdf: x is NaN");
  if (x >= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x <= -1.0) return gk(mu_tail, 0.0, 1.0 / std::sqrt(-x), abs_tol, "mu_cdf");
  const double tail = gk(mu_tail, 0.0, 1.0, abs_tol / 2, "mu_cdf");
  return tail + gk(mu_near, std::pow(-x, 0.25), 1.0, abs_tol / 2, "mu_cdf");
}

double potential_nu(std::complex<double> z) { return robin_constant_nu() - 2.0 * std::log(std::abs(nu_kernel(z))); }

double potential_mu(std::complex<double> z) {
  using asymptotics::sqrt_from_above;
  const cd r = sqrt_from_above(z);
  return 4.0 * std::numbers::ln2 - 2.0 * std::log(std::abs(1.0 + 2.0 * (r + sqrt_from_above(z + r))));
}

double weight_w(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("weight_w: x must lie in [-1, 1]");
  return 1.0 / std::norm(nu_kernel(cd(x, 0.0)));
}

double equilibrium_residual(double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("equilibrium_residual: x must lie in (-1, 1)");
  return potential_nu(cd(x, 0.0)) - std::log(weight_w(x)) - robin_constant_nu();
}

MeasureModel nu_model() {
  MeasureModel m;
  m.kind = MeasureKind::nu;
  m.support = {-1.0, 1.0};
  m.density = nu_density;
  m.cdf = [](double x) { return nu_cdf(x); };
  m.potential = potential_nu;
  m.weight = weight_w;
  m.robin_constant = robin_constant_nu();
  return m;
}

MeasureModel mu_model() {
  MeasureModel m;
  m.kind = MeasureKind::mu;
  m.support = {-std::numeric_limits<double>::infinity(), 0.0};
  m.density = mu_density;
  m.cdf = [](double x) { return mu_cdf(x); };
  m.potential = potential_mu;
  m.robin_constant = 4.0 * std::numbers::ln2;
  return m;
}

MeasureModel model(MeasureKind kind) { return kind == MeasureKind::nu ? nu_model() : mu_model(); }

double mass(const MeasureModel& m, double abs_tol) {
  if (m.kind == MeasureKind::nu) {
    return gk(nu_left, 0.0, 1.0, abs_tol / 2, "mass") + gk(nu_right, 0.0, 1.0, abs_tol / 2, "mass");
  }
  return gk(mu_tail, 0.0, 1.0, abs_tol / 2, "mass") + gk(mu_near, 0.0, 1.0, abs_tol / 2, "mass");
}

double potential_from_density(std::complex<double> z, const MeasureModel& m, double abs_tol) {
  if (z.imag() == 0.0 && z.real() >= m.support.first && z.real() <= m.support.second) {
    throw DomainError("potential_from_density: z lies on the support");
  }
  auto minus_log = [z](double x) { return -std::log(std::abs(z - x)); };
  if (m.kind == MeasureKind::nu) {
    const double a = gk([&](double s) { return minus_log(nu_left_x(s)) * nu_left(s); }, 0.0, 1.0, abs_tol / 2,
                        "potential_from_density");
    const double b = gk([&](double u) { return minus_log(nu_right_x(u)) * nu_right(u); }, 0.0, 1.0,
                        abs_tol / 2, "potential_from_density");
    return a + b;
  }
  const double near = gk([&](double u) { return minus_log(mu_near_x(u)) * mu_near(u); }, 0.0, 1.0,
                         abs_tol / 2, "potential_from_density");
  // log|z + 1/y²| = log|1 + z y²| - 2 log y keeps the y → 0 end exact
  const double tail = ts(
      [&](double y) { return -(std::log(std::abs(1.0 + z * (y * y))) - 2.0 * std::log(y)) * mu_tail(y); }, 0.0,
      1.0, abs_tol / 2, "potential_from_density");
  return near + tail;
}

double potentials_from_zeros(unsigned n, std::complex<double> z) {
  if (n < 1) throw DomainError("potentials_from_zeros: n must be at least 1");
  if (z.imag() == 0.0 && z.real() >= -1.0 && z.real() <= 1.0) {
    throw DomainError("potentials_from_zeros: z lies on [-1, 1]");
  }
  const auto poly = exact::transformed_poly(n);
  // B_n(1) is the leading coefficient of B̃_n
  const mpz_class& at_one = poly.coeffs().back();
  const long double log_value = exact::eval_certified(poly, z, 1e-12).log_abs();
  return static_cast<double>((exact::log_abs(at_one) - log_value) / static_cast<long double>(n));
}

double ks_distance(const ZeroSet& zs, const MeasureModel& m) {
  const EmpiricalCdf emp(zs);
  const auto& pts = emp.points();
  const double total = static_cast<double>(pts.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double f = m.cdf(pts[k]);
    worst = std::max({worst, std::fabs(f - static_cast<double>(k) / total),
                      std::fabs(f - static_cast<double>(k + 1) / total)});
  }
  return worst;
}

double ks_distance(unsigned n, MeasureKind kind, IsolationOptions opts) {
  if (n < 1) throw DomainError("ks_distance: n must be at least 1");
  const auto poly = kind == MeasureKind::nu ? exact::transformed_poly(n) : exact::apery_poly(n);
  return ks_distance(isolate_zeros(poly, opts), model(kind));
}

}  // namespace apery::zeros
