#include <doctest.h>

#include "apery/errors.hpp"
#include "apery/exact.hpp"
#include "apery/zeros.hpp"

#include <gmpxx.h>

#include <cmath>
#include <vector>

using namespace apery::zeros;
using apery::exact::PolyKind;
using apery::exact::PolynomialZ;

namespace {

bool contains(const RootInterval& r, double x) { return r.lo <= mpq_class(x) && mpq_class(x) <= r.hi; }

// ∏ (d_i y - n_i) for the given roots n_i/d_i.
PolynomialZ from_roots(const std::vector<std::pair<long, long>>& roots, PolyKind kind) {
  std::vector<mpz_class> c{1};
  for (const auto& [num, den] : roots) {
    std::vector<mpz_class> next(c.size() + 1, 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k] * den;
      next[k] -= c[k] * num;
    }
    c = std::move(next);
  }
  return PolynomialZ(std::move(c), kind);
}

}  // namespace

TEST_SUITE("zeros") {
  TEST_CASE("B_1 has the exact root -1/4") {
    const auto zs = isolate_zeros(apery::exact::apery_poly(1));
    REQUIRE(zs.roots.size() == 1);
    CHECK(zs.roots[0].lo == mpq_class(-1, 4));
    CHECK(zs.roots[0].hi == mpq_class(-1, 4));
    CHECK(zs.domain == ZeroDomain::negative_axis);
    CHECK(zs.count() == 1);
  }

  TEST_CASE("B_2 roots are -1/2 ± √2/3") {
    const auto zs = isolate_zeros(apery::exact::apery_poly(2));
    REQUIRE(zs.roots.size() == 2);
    const double r1 = -0.5 - std::sqrt(2.0) / 3;
    const double r2 = -0.5 + std::sqrt(2.0) / 3;
    CHECK(zs.roots[0].midpoint() == doctest::Approx(r1).epsilon(1e-12));
    CHECK(zs.roots[1].midpoint() == doctest::Approx(r2).epsilon(1e-12));
    const auto cdf = empirical_cdf(zs);
    CHECK(cdf(-0.5) == 0.5);
    CHECK(cdf(-10.0) == 0.0);
    CHECK(cdf(0.0) == 1.0);
  }

  TEST_CASE("intervals are certified by exact sign changes") {
    for (const unsigned n : {5u, 30u, 90u}) {
      const auto p = apery::exact::apery_poly(n);
      const auto zs = isolate_zeros(p);
      REQUIRE(zs.count() == n);
      CHECK(zs.square_free);
      for (std::size_t i = 0; i < zs.roots.size(); ++i) {
        const auto& r = zs.roots[i];
        CHECK(r.multiplicity == 1);
        CHECK(r.hi < 0);
        if (r.lo == r.hi) {
          CHECK(apery::exact::sign_at(p, r.lo) == 0);
        } else {
          CHECK(apery::exact::sign_at(p, r.lo) * apery::exact::sign_at(p, r.hi) < 0);
        }
        CHECK(r.width() <= 1e-12 * std::abs(r.midpoint()));
        if (i > 0) CHECK(zs.roots[i - 1].hi < r.lo);
      }
    }
  }

  TEST_CASE("transformed and original zeros correspond") {
    const unsigned n = 40;
    const auto direct = isolate_zeros(apery::exact::apery_poly(n));
    const auto unit = isolate_zeros(apery::exact::transformed_poly(n));
    CHECK(unit.domain == ZeroDomain::unit_interval);
    REQUIRE(unit.roots.size() == direct.roots.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double y = unit.roots[i].midpoint();
      CHECK(y > -1);
      CHECK(y < 1);
      const double z = (y - 1) / (y + 1);
      CHECK(z == doctest::Approx(direct.roots[i].midpoint()).epsilon(1e-9));
    }
  }

  TEST_CASE("looser tolerance still separates every root") {
    IsolationOptions opts;
    opts.iso_tol = 1e-3;
    for (unsigned n = 1; n <= 60; ++n) {
      const auto zs = isolate_zeros(apery::exact::apery_poly(n), opts);
      CHECK(zs.count() == n);
      for (const auto& r : zs.roots) CHECK(r.hi < 0);
    }
  }

  TEST_CASE("thread count does not change the result") {
    IsolationOptions one;
    one.threads = 1;
    IsolationOptions four;
    four.threads = 4;
    const auto a = isolate_zeros(apery::exact::apery_poly(70), one);
    const auto b = isolate_zeros(apery::exact::apery_poly(70), four);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
      CHECK(a.roots[i].lo == b.roots[i].lo);
      CHECK(a.roots[i].hi == b.roots[i].hi);
    }
  }

  TEST_CASE("modular square-free test") {
    CHECK(square_free_modular(apery::exact::apery_poly(25).coeffs()));
    const auto repeated = from_roots({{-1, 2}, {-1, 2}, {1, 3}}, PolyKind::transformed);
    CHECK_FALSE(square_free_modular(repeated.coeffs()));
  }

  TEST_CASE("repeated roots go through the square-free decomposition") {
    const auto p = from_roots({{-1, 2}, {-1, 2}, {1, 3}}, PolyKind::transformed);
    const auto zs = isolate_zeros(p);
    CHECK_FALSE(zs.square_free);
    CHECK(zs.count() == 3);
    REQUIRE(zs.roots.size() == 2);
    CHECK(contains(zs.roots[0], -0.5));
    CHECK(zs.roots[0].multiplicity == 2);
    CHECK(contains(zs.roots[1], 1.0 / 3.0));
    CHECK(zs.roots[1].multiplicity == 1);
    const auto cdf = empirical_cdf(zs);
    CHECK(cdf(0.0) == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("generic polynomials fall back to Descartes bisection") {
    const auto p = from_roots({{-9, 10}, {-1, 7}, {1, 100}, {2, 3}, {97, 100}}, PolyKind::transformed);
    const auto zs = isolate_zeros(p);
    CHECK_FALSE(zs.predicted_brackets);
    REQUIRE(zs.roots.size() == 5);
    const double expected[] = {-0.9, -1.0 / 7, 0.01, 2.0 / 3, 0.97};
    for (int i = 0; i < 5; ++i) CHECK(contains(zs.roots[i], expected[i]));
  }

  TEST_CASE("roots outside the interval are a consistency fault") {
    const auto p = from_roots({{0, 1}, {2, 1}}, PolyKind::transformed);
    CHECK_THROWS_AS(isolate_zeros(p), apery::ConsistencyFault);
  }
}
