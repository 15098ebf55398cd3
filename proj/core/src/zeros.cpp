#include "apery/zeros.hpp"

#include "apery/asymptotics.hpp"
#include "apery/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

namespace apery::zeros {

namespace {

using Poly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;
using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

// --- modular arithmetic ------------------------------------------------------

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const u64 inv = powmod(b.back(), p - 2, p);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
      const u64 coef = mulmod(a.back(), inv, p);
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t j = 0; j <= db; ++j) {
        a[shift + j] = (a[shift + j] + p - mulmod(coef, b[j], p)) % p;
      }
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

Poly derivative(const Poly& f) {
  Poly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<unsigned long>(k));
  return d;
}

// --- rational polynomials, used only by the Yun fallback -----------------------

void trim(QPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

QPoly derivative(const QPoly& f) {
  QPoly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class coef = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = coef;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly monic(QPoly a) {
  const mpq_class lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly subtract(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  trim(a);
  return a;
}

Poly primitive(const QPoly& a) {
  mpz_class den = 1;
  for (const auto& c : a) den = lcm(den, c.get_den());
  Poly out;
  mpz_class content = 0;
  for (const auto& c : a) {
    out.push_back(c.get_num() * (den / c.get_den()));
    content = gcd(content, out.back());
  }
  if (content != 0) {
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  }
  return out;
}

/// f = Π a_i^i with square-free, pairwise coprime a_i.
std::vector<std::pair<Poly, int>> yun(const Poly& f) {
  QPoly fq(f.begin(), f.end());
  const QPoly fd = derivative(fq);
  const QPoly a0 = gcd(fq, fd);
  QPoly b = divmod(fq, a0).first;
  QPoly c = divmod(fd, a0).first;
  QPoly d = subtract(c, derivative(b));
  std::vector<std::pair<Poly, int>> out;
  for (int i = 1; b.size() > 1; ++i) {
    const QPoly a = gcd(b, d);
    if (a.size() > 1) out.emplace_back(primitive(a), i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = subtract(c, derivative(b));
  }
  return out;
}

// --- Descartes bisection on (-1, 1) --------------------------------------------

void taylor_shift(Poly& a, int direction) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) {
      if (direction > 0) {
        a[j] += a[j + 1];
      } else {
        a[j] -= a[j + 1];
      }
    }
  }
}

// Upper bound on the number of roots of q in (0, 1), exact when it is 0 or 1.
int descartes_bound(const Poly& q) {
  Poly r(q.rbegin(), q.rend());
  taylor_shift(r, +1);
  int changes = 0;
  int last = 0;
  for (const auto& c : r) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

struct DyadicNode {
  Poly q;  // q(x) = f(lo + (hi - lo)·x) up to a positive factor, x ∈ (0, 1)
  mpz_class c;
  unsigned long k = 0;  // the node covers (c/2^k, (c+1)/2^k) in [0, 1]
};

mpq_class dyadic(const mpz_class& c, unsigned long k) {
  mpq_class v(c);
  mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), k);
  return v;
}

// Roots of a square-free f in (-1, 1) as isolating intervals, sorted.
std::vector<RootInterval> descartes_isolate(const Poly& f) {
  Poly q = f;
  taylor_shift(q, -1);
  for (std::size_t i = 0; i < q.size(); ++i) mpz_mul_2exp(q[i].get_mpz_t(), q[i].get_mpz_t(), i);
  const std::size_t n = q.size() - 1;

  auto to_y = [](const mpq_class& x) { return mpq_class(2 * x - 1); };
  std::vector<RootInterval> out;
  std::vector<DyadicNode> stack;
  stack.push_back({std::move(q), 0, 0});
  while (!stack.empty()) {
    DyadicNode node = std::move(stack.back());
    stack.pop_back();
    const int v = descartes_bound(node.q);
    if (v == 0) continue;
    const mpq_class lo = dyadic(node.c, node.k);
    const mpq_class hi = dyadic(node.c + 1, node.k);
    // an endpoint may itself be a root found at an earlier midpoint
    mpz_class at_one = 0;
    for (const auto& c : node.q) at_one += c;
    const bool both_roots = sgn(node.q.front()) == 0 && sgn(at_one) == 0;
    if (v == 1 && !both_roots) {
      out.push_back({to_y(lo), to_y(hi), 1});
      continue;
    }
    if (node.k > 4096) throw ConsistencyFault("descartes_isolate: subdivision did not terminate");
    Poly left = node.q;
    for (std::size_t i = 0; i <= n; ++i) mpz_mul_2exp(left[i].get_mpz_t(), left[i].get_mpz_t(), n - i);
    Poly right = left;
    taylor_shift(right, +1);
    if (sgn(right.front()) == 0) {
      const mpq_class mid = to_y(dyadic(2 * node.c + 1, node.k + 1));
      out.push_back({mid, mid, 1});
    }
    stack.push_back({std::move(right), 2 * node.c + 1, node.k + 1});
    stack.push_back({std::move(left), 2 * node.c, node.k + 1});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return out;
}

// Bracket points in (-1, 1) between consecutive predicted zeros of B̃_n: the
// images of phase = kπ, k = n-1..1, under -x ↦ (1-x)/(1+x). Empty when they
// are not strictly increasing.
std::vector<mpq_class> predicted_brackets(unsigned n) {
  std::vector<mpq_class> points{mpq_class(-1)};
  double previous = -1.0;
  for (unsigned k = n - 1; k >= 1; --k) {
    const double theta = asymptotics::solve_phase(n, std::numbers::pi_v<long double> * k);
    const double x = asymptotics::x_from_theta(theta);
    const double y = (1.0 - x) / (1.0 + x);
    if (!(y > previous && y < 1.0)) return {};
    points.emplace_back(y);
    previous = y;
  }
  points.emplace_back(1);
  return points;
}

struct SignedPoint {
  mpq_class y;
  int sign;
};

// Intervals between consecutive points of opposite sign.
std::vector<RootInterval> sign_change_intervals(const std::vector<SignedPoint>& pts) {
  std::vector<RootInterval> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].sign * pts[i + 1].sign < 0) out.push_back({pts[i].y, pts[i + 1].y, 1});
  }
  return out;
}

// Brackets from the phase prediction, with a bounded subdivision of intervals
// that show no sign change. Empty when deg f sign changes are not reached.
std::vector<RootInterval> bracket_isolate(const exact::PolynomialZ& f, unsigned n, bool& untouched) {
  untouched = false;
  const auto grid = predicted_brackets(n);
  if (grid.empty()) return {};
  std::vector<SignedPoint> pts;
  for (const auto& y : grid) {
    int s = exact::sign_at(f, y);
    if (s == 0) return {};
    pts.push_back({y, s});
  }
  auto found = sign_change_intervals(pts);
  untouched = found.size() == n;
  const std::size_t budget = 8 * static_cast<std::size_t>(n) + 16;
  for (int level = 0; level < 6 && found.size() < n; ++level) {
    std::vector<SignedPoint> next{pts.front()};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (pts[i].sign == pts[i + 1].sign && next.size() < budget) {
        mpq_class mid = (pts[i].y + pts[i + 1].y) / 2;
        const int s = exact::sign_at(f, mid);
        if (s == 0) return {};
        next.push_back({std::move(mid), s});
      }
      next.push_back(pts[i + 1]);
    }
    pts = std::move(next);
    found = sign_change_intervals(pts);
  }
  if (found.size() != n) return {};
  return found;
}

mpq_class to_negative_axis(const mpq_class& y) {
  mpq_class v = (y - 1) / (y + 1);
  v.canonicalize();
  return v;
}

// Bisection on an interval holding exactly one simple root of f. At most one
// endpoint may be a root of f; the sign of the other endpoint then decides.
void refine(const exact::PolynomialZ& f, RootInterval& iv, const std::function<bool(const RootInterval&)>& done) {
  if (iv.lo == iv.hi) return;
  const int s_lo = exact::sign_at(f, iv.lo);
  const int s_hi = exact::sign_at(f, iv.hi);
  if (s_lo == 0 && s_hi == 0) throw ConsistencyFault("refine: both endpoints are roots");
  while (!done(iv)) {
    mpq_class mid = (iv.lo + iv.hi) / 2;
    const int s = exact::sign_at(f, mid);
    if (s == 0) {
      iv.lo = mid;
      iv.hi = mid;
      return;
    }
    const bool root_left = s_lo != 0 ? s != s_lo : s == s_hi;
    if (root_left) {
      iv.hi = std::move(mid);
    } else {
      iv.lo = std::move(mid);
    }
  }
}

double scale_of(const mpq_class& a, const mpq_class& b) {
  return std::max({1.0, std::fabs(a.get_d()), std::fabs(b.get_d())});
}

// Isolates the roots of a transformed-kind square-free factor in (-1, 1) and
// refines them in the requested domain.
std::vector<RootInterval> isolate_factor(const exact::PolynomialZ& f, ZeroDomain domain, double tol,
                                         unsigned threads, bool try_prediction, bool& predicted) {
  const unsigned n = static_cast<unsigned>(f.degree());
  predicted = false;
  std::vector<RootInterval> roots;
  if (try_prediction && n >= 2) roots = bracket_isolate(f, n, predicted);
  if (roots.empty()) {
    predicted = false;
    roots = descartes_isolate(f.coeffs());
  }
  // endpoints are pulled off ±1 so that T maps them to finite negative numbers
  auto done = [domain, tol](const RootInterval& iv) {
    if (iv.lo <= -1 || iv.hi >= 1) return false;
    if (domain == ZeroDomain::unit_interval) return mpq_class(iv.hi - iv.lo).get_d() <= tol * scale_of(iv.lo, iv.hi);
    // b < 0 is the endpoint nearer the origin, so the width is relative to the root
    const mpq_class a = to_negative_axis(iv.lo);
    const mpq_class b = to_negative_axis(iv.hi);
    return mpq_class(b - a).get_d() <= tol * std::fabs(b.get_d());
  };
  detail::parallel_for(roots.size(), threads, [&](std::size_t i) { refine(f, roots[i], done); });
  return roots;
}

}  // namespace

double RootInterval::midpoint() const { return mpq_class((lo + hi) / 2).get_d(); }

double RootInterval::width() const { return mpq_class(hi - lo).get_d(); }

std::size_t ZeroSet::count() const {
  std::size_t total = 0;
  for (const auto& r : roots) total += static_cast<std::size_t>(r.multiplicity);
  return total;
}

std::vector<double> ZeroSet::midpoints() const {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(r.midpoint());
  return out;
}

bool square_free_modular(const std::vector<mpz_class>& f, int attempts) {
  if (f.size() <= 2) return true;
  const Poly fd = derivative(f);
  mpz_class base = 1;
  base <<= 62;
  for (int a = 0; a < attempts; ++a) {
    mpz_class prime;
    mpz_nextprime(prime.get_mpz_t(), mpz_class(base + mpz_class(a) * (mpz_class(1) << 40)).get_mpz_t());
    const u64 p = prime.get_ui();
    if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
    std::vector<u64> fm, dm;
    for (const auto& c : f) fm.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    for (const auto& c : fd) dm.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    if (gcd_degree_mod(fm, dm, p) == 0) return true;
  }
  return false;
}

ZeroSet isolate_zeros(const exact::PolynomialZ& p, IsolationOptions opts) {
  if (!(opts.iso_tol > 0.0)) throw DomainError("isolate_zeros: iso_tol must be positive");
  ZeroSet zs;
  zs.n = static_cast<unsigned>(p.degree());
  zs.domain = p.kind() == exact::PolyKind::apery ? ZeroDomain::negative_axis : ZeroDomain::unit_interval;
  if (zs.n == 0) return zs;
  if (zs.n == 1) {
    mpq_class r(-p[0], p[1]);
    r.canonicalize();
    const bool inside = zs.domain == ZeroDomain::negative_axis ? r < 0 : (r > -1 && r < 1);
    if (!inside) throw ConsistencyFault("isolate_zeros: the root lies outside the expected domain");
    zs.roots.push_back({r, r, 1});
    zs.predicted_brackets = true;
    return zs;
  }

  const exact::PolynomialZ f = p.kind() == exact::PolyKind::apery ? exact::to_unit_interval(p) : p;
  zs.square_free = square_free_modular(f.coeffs());
  if (zs.square_free) {
    zs.roots = isolate_factor(f, zs.domain, opts.iso_tol, opts.threads, true, zs.predicted_brackets);
  } else {
    for (const auto& [factor, multiplicity] : yun(f.coeffs())) {
      bool unused = false;
      auto part = isolate_factor(exact::PolynomialZ(factor, exact::PolyKind::transformed), zs.domain,
                                 opts.iso_tol, opts.threads, false, unused);
      for (auto& r : part) {
        r.multiplicity = multiplicity;
        zs.roots.push_back(std::move(r));
      }
    }
    std::sort(zs.roots.begin(), zs.roots.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i + 1 < zs.roots.size(); ++i) {
      if (!(zs.roots[i].hi < zs.roots[i + 1].lo)) {
        throw ConsistencyFault("isolate_zeros: roots of distinct square-free factors overlap at this tolerance");
      }
    }
  }

  if (zs.domain == ZeroDomain::negative_axis) {
    for (auto& r : zs.roots) {
      r.lo = to_negative_axis(r.lo);
      r.hi = to_negative_axis(r.hi);
    }
  }
  if (zs.count() != zs.n) {
    throw ConsistencyFault("isolate_zeros: found " + std::to_string(zs.count()) + " real roots for degree " +
                           std::to_string(zs.n));
  }
  return zs;
}

EmpiricalCdf::EmpiricalCdf(const ZeroSet& zs) {
  for (const auto& r : zs.roots) {
    for (int m = 0; m < r.multiplicity; ++m) points_.push_back(r.midpoint());
  }
  std::sort(points_.begin(), points_.end());
}

double EmpiricalCdf::operator()(double x) const {
  if (points_.empty()) return 0.0;
  const auto count = std::upper_bound(points_.begin(), points_.end(), x) - points_.begin();
  return static_cast<double>(count) / static_cast<double>(points_.size());
}

EmpiricalCdf empirical_cdf(const ZeroSet& zs) { return EmpiricalCdf(zs); }

}  // namespace apery::zeros
