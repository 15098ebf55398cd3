#ifndef APERY_ZEROS_HPP
#define APERY_ZEROS_HPP

// Exact real-root isolation for B_n and B̃_n, and the empirical zero-counting
// measure.

#include "apery/exact.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace apery::zeros {

enum class ZeroDomain {
  negative_axis,  ///< roots of B_n, all in (-∞, 0)
  unit_interval,  ///< roots of B̃_n, all in (-1, 1)
};

/// [lo, hi] contains exactly one root; lo == hi when the root is that rational.
struct RootInterval {
  mpq_class lo;
  mpq_class hi;
  int multiplicity = 1;

  double midpoint() const;
  double width() const;
};

struct ZeroSet {
  unsigned n = 0;
  ZeroDomain domain = ZeroDomain::unit_interval;
  /// Sorted, pairwise disjoint.
  std::vector<RootInterval> roots;
  /// The modular gcd(f, f') test succeeded; otherwise roots came from a Yun
  /// square-free decomposition and may carry multiplicities.
  bool square_free = true;
  /// Brackets came from the phase prediction without further subdivision.
  bool predicted_brackets = false;

  /// Total count with multiplicity.
  std::size_t count() const;
  std::vector<double> midpoints() const;
};

struct IsolationOptions {
  /// Target width: absolute on (-1, 1), relative to |root| on the negative axis.
  double iso_tol = 1e-12;
  unsigned threads = 0;
};

/// Isolates all real zeros of an Apéry-type polynomial.
///
/// A `transformed` polynomial is searched on (-1, 1). An `apery` polynomial is
/// first moved to (-1, 1) by z ↦ (z-1)/(z+1), which keeps the order of roots,
/// and the result is mapped back onto (-∞, 0). Brackets are placed between
/// the phase-predicted zeros; if they do not show deg p sign changes, the
/// search falls back to interval subdivision and then to Descartes bisection.
/// Throws ConsistencyFault when the root count differs from the degree.
ZeroSet isolate_zeros(const exact::PolynomialZ& p, IsolationOptions opts = {});

/// x ↦ (#roots ≤ x)/n, roots taken at interval midpoints, with multiplicity.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(const ZeroSet& zs);

  double operator()(double x) const;
  const std::vector<double>& points() const noexcept { return points_; }

 private:
  std::vector<double> points_;
};

EmpiricalCdf empirical_cdf(const ZeroSet& zs);

/// Primes p ∤ lc(f) with deg gcd(f mod p, f' mod p) = 0 prove f square-free.
bool square_free_modular(const std::vector<mpz_class>& f, int attempts = 3);

}  // namespace apery::zeros

#endif  // APERY_ZEROS_HPP
