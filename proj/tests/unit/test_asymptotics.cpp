#include <doctest.h>

#include "apery/asymptotics.hpp"
#include "apery/errors.hpp"
#include "apery/exact.hpp"
#include "apery/zeros.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

using namespace apery::asymptotics;
using apery::LogComplex;
using apery::LogReal;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

// Closed form of the phase shift, written out independently of the library.
double phase_oracle(double theta) {
  const double phi = pi * theta / 2;
  return 2 * std::atan(std::tan(phi) * (1 + std::sin(phi)) / (2 + std::sin(phi))) -
         1.5 * std::atan(1 / std::cos(phi));
}

// |B_n(z)/leading_term - 1| with B_n from certified evaluation.
double leading_error(unsigned n, cd z) {
  const auto exact = apery::exact::eval_certified(apery::exact::apery_poly(n), z, 1e-14);
  const LogComplex e{{exact.log_abs(), exact.arg()}};
  return std::abs(e.ratio_to(leading_term(n, z)) - 1.0L);
}

// B_n(-x) exactly, as (log|v|, sign).
LogReal exact_negative(unsigned n, double x) {
  const mpq_class q = apery::exact::eval_exact(apery::exact::apery_poly(n), -mpq_class(x));
  return {apery::exact::log_abs(q.get_num()) - apery::exact::log_abs(q.get_den()), sgn(q)};
}

std::vector<cd> branch_grid() {
  std::vector<cd> pts;
  for (int i = 0; i < 10; ++i) {
    const double r = 0.1 * std::pow(100.0, i / 9.0);
    for (int j = 0; j < 10; ++j) {
      const double arg = -pi + 0.1 + (2 * pi - 0.2) * j / 9.0;
      pts.push_back(std::polar(r, arg));
    }
  }
  return pts;
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("principal square root") {
    CHECK(std::abs(sqrt_principal(4.0) - cd(2, 0)) < 1e-15);
    CHECK(std::abs(sqrt_principal(cd(0, 1)) - cd(1, 1) / std::sqrt(2.0)) < 1e-15);
    CHECK_THROWS_AS(sqrt_principal(cd(-1, 0)), apery::DomainError);
    CHECK_THROWS_AS(sqrt_principal(cd(0, 0)), apery::DomainError);
    CHECK(std::abs(sqrt_from_above(cd(-1, 0)) - cd(0, 1)) < 1e-15);
    CHECK(std::abs(sqrt_from_above(cd(-1, -0.0)) - cd(0, 1)) < 1e-15);
    CHECK(std::abs(sqrt_from_above(cd(-4, 1e-300)) - cd(0, 2)) < 1e-15);
  }

  TEST_CASE("branch identities on a grid") {
    for (const cd z : branch_grid()) {
      const auto p = BranchedPoint::at(z);
      const cd s = std::sqrt(z);
      const double scale = std::max(1.0, std::abs(p.b));
      CHECK(std::abs(p.a * p.b - s) <= 1e-14 * scale * scale);
      CHECK(std::abs(p.b - p.a - 2.0 * s) <= 1e-14 * scale);
      CHECK(std::abs(p.a + p.b - 2.0 * std::sqrt(z + s)) <= 1e-14 * scale);
      CHECK(std::abs(p.a) < std::abs(p.b));
      if (z.real() > 0) CHECK(std::abs(p.a) < 1);
      if (z.real() > 0 && std::abs(z) >= 0.25) CHECK(std::abs(p.b) > 1);
    }
    // b → 0 with z, so |b| > 1 needs |z| bounded below
    CHECK(std::abs(BranchedPoint::at(0.1).b) < 1);
    CHECK_THROWS_AS(BranchedPoint::at(cd(-0.5, 0)), apery::DomainError);
  }

  TEST_CASE("negative-axis branches are limits from above") {
    for (const double x : {0.01, 0.125, 0.5625, 3.0, 40.0}) {
      const auto m = NegativeAxisPoint::from_x(x);
      const auto up = BranchedPoint::at(cd(-x, 1e-13 * x));
      CHECK(std::abs(m.a_minus - up.a) < 1e-6);
      CHECK(std::abs(m.b_minus - up.b) < 1e-6);
      CHECK(std::abs(m.a_minus * m.b_minus - cd(0, std::sqrt(x))) < 1e-14 * std::max(1.0, x));
      CHECK(m.theta == doctest::Approx(theta_from_x(x)).epsilon(1e-15));
      const auto back = NegativeAxisPoint::from_theta(m.theta);
      CHECK(back.x == doctest::Approx(x).epsilon(1e-13));
    }
  }

  TEST_CASE("theta and x parameterisation") {
    CHECK(x_from_theta(0.5) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(x_from_theta(2.0 / 3.0) == doctest::Approx(9.0 / 16.0).epsilon(1e-14));
    CHECK(x_from_theta(1e-6) < 1e-20);
    CHECK(theta_from_x(0.125) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(theta_from_x(1e12) > 0.999);
    CHECK_THROWS_AS(x_from_theta(0.0), apery::DomainError);
    CHECK_THROWS_AS(x_from_theta(1.0), apery::DomainError);
    CHECK_THROWS_AS(theta_from_x(-1.0), apery::DomainError);
    for (long double x = 1e-6L; x < 1e8L; x *= 1.7L) {
      CHECK(std::abs(x_from_theta(theta_from_x(x)) / x - 1) <= 1e-14L);
    }
    // in double, one ulp of θ near 1 costs 2ε/(1-θ) in x
    for (double x = 1e-6; x < 100; x *= 1.7) {
      CHECK(std::abs(x_from_theta(theta_from_x(x)) / x - 1) <= 1e-14);
    }
    CHECK(std::abs(x_from_theta(theta_from_x(3.7)) / 3.7 - 1) <= 1e-14);
    double prev = 0;
    for (int i = 1; i < 1000; ++i) {
      const double x = x_from_theta(i / 1000.0);
      CHECK(x > prev);
      prev = x;
    }
    // s = sin²(πθ/2) solves s² + 4xs - 4x = 0
    for (const double x : {0.01, 1.0, 50.0}) {
      const double s = std::pow(std::sin(pi * theta_from_x(x) / 2), 2);
      CHECK(std::abs(s * s + 4 * x * s - 4 * x) <= 1e-13 * std::max(1.0, x));
    }
  }

  TEST_CASE("phase shift") {
    CHECK(phase_shift(1e-9) == doctest::Approx(-3 * pi / 8).epsilon(1e-8));
    CHECK(phase_shift(0.5) == doctest::Approx(-0.307739854).epsilon(1e-8));
    for (int i = 1; i < 100; ++i) {
      const double t = i / 100.0;
      CHECK(phase_shift(t) == doctest::Approx(phase_oracle(t)).epsilon(1e-13));
      CHECK(std::abs(phase_shift(t + 1e-6) - phase_shift(t)) <= 1e-4);
      CHECK(static_cast<double>(phase_shift(static_cast<long double>(t))) ==
            doctest::Approx(phase_shift(t)).epsilon(1e-14));
    }
  }

  TEST_CASE("leading term reproduces the classical estimate at z = 1") {
    for (const unsigned n : {1u, 10u, 100u, 5000u}) {
      const auto ratio = leading_term(n, 1.0).ratio_to(classical_estimate(n));
      CHECK(std::abs(ratio - 1.0L) <= 1e-15L);
    }
  }

  TEST_CASE("leading term against exact values") {
    CHECK(leading_error(100, 2.0) <= 0.05);
    const auto b200 = apery::exact::apery_number_sum(200);
    const long double r = std::exp(apery::exact::log_abs(b200) - leading_term(200, 1.0).log_abs());
    CHECK(std::abs(r - 1.0L) <= 0.03L);
    CHECK(std::abs(leading_term(200, 1.0).arg()) <= 1e-15L);
    for (const cd z : {cd(1, 0), cd(2, 0), cd(1, 1), cd(0.3, 0)}) {
      for (const unsigned n : {25u, 50u, 100u}) {
        CHECK(leading_error(2 * n, z) < leading_error(n, z));
      }
    }
    CHECK_THROWS_AS(leading_term(5, cd(-2, 0)), apery::DomainError);
  }

  TEST_CASE("oscillatory form is twice the real part of the continued term") {
    for (const unsigned n : {1u, 7u, 50u, 200u, 500u}) {
      for (int i = 1; i < 20; ++i) {
        const double theta = i / 20.0;
        const auto osc = oscillatory_approx_theta(n, theta);
        const auto twice = LogReal::twice_real_part(continued_leading_term(n, osc.x));
        if (std::abs(osc.cos_phase()) < 1e-3) continue;
        CHECK(std::abs(osc.value().ratio_to(twice) - 1.0L) <= 1e-10L);
        const auto by_x = oscillatory_approx(n, osc.x);
        CHECK(std::abs(by_x.value().ratio_to(osc.value()) - 1.0L) <= 1e-10L);
        CHECK_FALSE(osc.domain_warning);
      }
    }
    CHECK(oscillatory_approx_theta(10, 0.01).domain_warning);
    CHECK(oscillatory_approx_theta(10, 0.99).domain_warning);
  }

  TEST_CASE("oscillatory form against exact values where the cosine is large") {
    int checked = 0;
    for (const unsigned n : {100u, 150u, 200u}) {
      for (const double x : {0.125, 0.5625, 0.3, 2.0, 7.0}) {
        const auto osc = oscillatory_approx(n, x);
        if (std::abs(osc.cos_phase()) < 0.5) continue;
        const auto ex = exact_negative(n, x);
        CHECK(std::abs(osc.value().ratio_to(ex) - 1.0L) <= 0.1L);
        ++checked;
      }
    }
    CHECK(checked >= 8);
  }

  TEST_CASE("sign changes sit at phase π/2 + kπ") {
    const unsigned n = 30;
    for (int k = 0; k < static_cast<int>(n); ++k) {
      const double t = predicted_zero_theta(n, k);
      if (t < kThetaMargin || t > 1 - kThetaMargin) continue;
      const auto f = [&](double th) { return oscillatory_approx_theta(n, th).value().sign; };
      CHECK(f(t - 1e-6) == -f(t + 1e-6));
      const long double phase = phase_shift(static_cast<long double>(t)) + n * std::numbers::pi_v<long double> * t;
      CHECK(static_cast<double>(phase) == doctest::Approx(pi / 2 + k * pi).epsilon(1e-12));
    }
  }

  TEST_CASE("predicted zeros") {
    CHECK(predicted_zero(1, 0) == doctest::Approx(-0.25).epsilon(0.15));
    CHECK_THROWS_AS(predicted_zero(1, 1), apery::RangeError);
    CHECK_THROWS_AS(predicted_zero(5, -1), apery::RangeError);
    for (const unsigned n : {10u, 100u, 400u}) {
      double prev = 0;
      for (int k = 0; k < static_cast<int>(n); ++k) {
        const double z = predicted_zero(n, k);
        CHECK(z < prev);
        prev = z;
      }
      CHECK_THROWS_AS(predicted_zero(n, static_cast<int>(n)), apery::RangeError);
    }
    // interior predictions lie between the neighbouring exact zeros
    const unsigned n = 50;
    const auto zs = apery::zeros::isolate_zeros(apery::exact::apery_poly(n));
    auto mids = zs.midpoints();
    std::sort(mids.begin(), mids.end(), std::greater<>());
    for (int k = 1; k + 1 < static_cast<int>(n); ++k) {
      const double z = predicted_zero(n, k);
      CHECK(z < mids[k - 1]);
      CHECK(z > mids[k + 1]);
    }
  }
}
