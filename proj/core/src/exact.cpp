#include "apery/exact.hpp"

#include "apery/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace apery::exact {

namespace {

constexpr long kDefaultPrecisionCap = 1L << 20;
constexpr long kBoundBits = 64;

// t_k = C(n,k)·C(n+k,k); t_{k+1} = t_k (n-k)(n+k+1) / (k+1)², an exact division.
std::vector<mpz_class> apery_coefficients(unsigned n) {
  std::vector<mpz_class> coeffs(n + 1);
  mpz_class t = 1;
  for (unsigned k = 0; k <= n; ++k) {
    coeffs[k] = t * t;
    if (k == n) break;
    t *= static_cast<unsigned long>(n - k);
    t *= static_cast<unsigned long>(n + k + 1);
    const unsigned long d = static_cast<unsigned long>(k + 1) * (k + 1);
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), d);
  }
  return coeffs;
}

// p(z) = Σ c_k z^k with z = (a + ib)/d and integers a, b, d > 0. Returns the
// Gaussian integer d^n p(z).
void homogeneous_horner(const std::vector<mpz_class>& c, const mpz_class& a, const mpz_class& b,
                        const mpz_class& d, mpz_class& out_re, mpz_class& out_im) {
  const std::size_t n = c.size() - 1;
  out_re = c[n];
  out_im = 0;
  mpz_class dpow = 1;
  mpz_class t_re, t_im;
  const bool real_point = sgn(b) == 0;
  for (std::size_t k = n; k-- > 0;) {
    dpow *= d;
    if (real_point) {
      out_re *= a;
    } else {
      t_re = out_re * a - out_im * b;
      t_im = out_re * b + out_im * a;
      out_re.swap(t_re);
      out_im.swap(t_im);
    }
    out_re += c[k] * dpow;
  }
}

void to_common_denominator(const RationalComplex& z, mpz_class& a, mpz_class& b, mpz_class& d) {
  d = lcm(z.re.get_den(), z.im.get_den());
  a = z.re.get_num() * (d / z.re.get_den());
  b = z.im.get_num() * (d / z.im.get_den());
}

// γ_m = m·u / (1 - m·u), u = 2^-bits, rounded upward.
BigFloat gamma_bound(std::size_t m, long bits) {
  BigFloat mu(kBoundBits);
  mpfr_set_ui_2exp(mu.get(), static_cast<unsigned long>(m), -bits, MPFR_RNDU);
  BigFloat denom(kBoundBits);
  mpfr_ui_sub(denom.get(), 1, mu.get(), MPFR_RNDD);
  if (denom.sign() <= 0) {
    BigFloat inf(kBoundBits);
    mpfr_set_inf(inf.get(), 1);
    return inf;
  }
  mpfr_div(mu.get(), mu.get(), denom.get(), MPFR_RNDU);
  return mu;
}

// Upper bound for Σ |c_k| |z|^k.
BigFloat abs_series_bound(const PolynomialZ& p, const RationalComplex& z) {
  BigFloat re(kBoundBits, abs(z.re), MPFR_RNDU);
  BigFloat im(kBoundBits, abs(z.im), MPFR_RNDU);
  BigFloat r(kBoundBits);
  mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDU);
  BigFloat s(kBoundBits, mpz_class(abs(p.coeffs().back())), MPFR_RNDU);
  mpz_class c;
  for (std::size_t k = p.degree(); k-- > 0;) {
    mpfr_mul(s.get(), s.get(), r.get(), MPFR_RNDU);
    c = abs(p[k]);
    mpfr_add_z(s.get(), s.get(), c.get_mpz_t(), MPFR_RNDU);
  }
  return s;
}

// Horner with single-rounding complex products. Each step is one product and
// one addition, each with relative error at most u in modulus.
BigComplex mpfr_horner(const PolynomialZ& p, const RationalComplex& z, long bits) {
  BigFloat zr(bits, z.re), zi(bits, z.im);
  BigComplex s(bits);
  mpfr_set_z(s.re.get(), p.coeffs().back().get_mpz_t(), MPFR_RNDN);
  BigFloat tr(bits), ti(bits);
  const bool real_point = z.is_real();
  for (std::size_t k = p.degree(); k-- > 0;) {
    if (real_point) {
      mpfr_mul(tr.get(), s.re.get(), zr.get(), MPFR_RNDN);
      mpfr_mul(ti.get(), s.im.get(), zr.get(), MPFR_RNDN);
    } else {
      mpfr_fmms(tr.get(), s.re.get(), zr.get(), s.im.get(), zi.get(), MPFR_RNDN);
      mpfr_fmma(ti.get(), s.re.get(), zi.get(), s.im.get(), zr.get(), MPFR_RNDN);
    }
    mpfr_add_z(s.re.get(), tr.get(), p[k].get_mpz_t(), MPFR_RNDN);
    mpfr_swap(s.im.get(), ti.get());
  }
  return s;
}

CertifiedComplex round_exact(const RationalComplex& v, long bits) {
  CertifiedComplex out{BigComplex(bits), BigFloat(kBoundBits), bits};
  mpfr_set_q(out.value.re.get(), v.re.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(out.value.im.get(), v.im.get_mpq_t(), MPFR_RNDN);
  // componentwise relative error ≤ 2^-bits ⇒ |error| ≤ 2^-bits |v| ≤ 2^(1-bits) |rounded|
  BigFloat modulus(kBoundBits);
  mpfr_hypot(modulus.get(), out.value.re.get(), out.value.im.get(), MPFR_RNDU);
  mpfr_mul_2si(out.abs_error_bound.get(), modulus.get(), 1 - bits, MPFR_RNDU);
  return out;
}

}  // namespace

PolynomialZ::PolynomialZ(std::vector<mpz_class> coeffs, PolyKind kind)
    : coeffs_(std::move(coeffs)), kind_(kind) {
  while (coeffs_.size() > 1 && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

RationalComplex RationalComplex::from(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("complex argument must be finite");
  }
  return RationalComplex(mpq_class(z.real()), mpq_class(z.imag()));
}

double CertifiedComplex::relative_error_bound() const {
  BigFloat modulus(kBoundBits);
  mpfr_hypot(modulus.get(), value.re.get(), value.im.get(), MPFR_RNDD);
  if (modulus.is_zero()) return std::numeric_limits<double>::infinity();
  BigFloat rel(kBoundBits);
  mpfr_div(rel.get(), abs_error_bound.get(), modulus.get(), MPFR_RNDU);
  return mpfr_get_d(rel.get(), MPFR_RNDU);
}

mpz_class binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class apery_number_sum(unsigned n) {
  mpz_class sum = 0;
  for (const auto& c : apery_coefficients(n)) sum += c;
  return sum;
}

AperySequence apery_sequence_sum(unsigned n_max) {
  AperySequence seq;
  seq.method = SequenceMethod::direct_sum;
  seq.values.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) seq.values.push_back(apery_number_sum(n));
  return seq;
}

AperySequence apery_sequence_rec(unsigned n_max) {
  if (n_max < 1) throw DomainError("apery_sequence_rec: n_max must be at least 1");
  AperySequence seq;
  seq.method = SequenceMethod::recurrence;
  seq.values.reserve(n_max + 1);
  seq.values.emplace_back(1);
  seq.values.emplace_back(5);
  mpz_class lhs, poly, cube;
  for (unsigned long n = 2; n <= n_max; ++n) {
    // n³ b_n = (34n³ - 51n² + 27n - 5) b_{n-1} - (n-1)³ b_{n-2}
    poly = 34 * n * n * n;
    poly -= 51 * n * n;
    poly += 27 * n;
    poly -= 5;
    lhs = poly * seq.values[n - 1];
    cube = (n - 1) * (n - 1) * (n - 1);
    lhs -= cube * seq.values[n - 2];
    cube = n * n * n;
    if (!mpz_divisible_p(lhs.get_mpz_t(), cube.get_mpz_t())) {
      throw ConsistencyFault("apery_sequence_rec: inexact division by n^3 at n = " +
                             std::to_string(n));
    }
    mpz_divexact(lhs.get_mpz_t(), lhs.get_mpz_t(), cube.get_mpz_t());
    seq.values.push_back(lhs);
  }
  return seq;
}

long double log_abs(const mpz_class& v) {
  if (sgn(v) == 0) return -std::numeric_limits<long double>::infinity();
  return BigFloat(128, v).log_abs();
}

PolynomialZ apery_poly(unsigned n) { return PolynomialZ(apery_coefficients(n), PolyKind::apery); }

PolynomialZ transformed_poly(unsigned n) { return to_unit_interval(apery_poly(n)); }

PolynomialZ to_unit_interval(const PolynomialZ& p) {
  // Homogeneous Horner in u = z-1, v = z+1:
  //   R ← R·u + c_j v^{n-j},   j = n-1, ..., 0
  const auto& c = p.coeffs();
  const std::size_t n = p.degree();
  std::vector<mpz_class> r{c[n]};
  std::vector<mpz_class> v{1};
  for (std::size_t j = n; j-- > 0;) {
    // v ← v·(z+1)
    v.emplace_back(0);
    for (std::size_t i = v.size() - 1; i > 0; --i) v[i] += v[i - 1];
    // r ← r·(z-1)
    r.emplace_back(0);
    for (std::size_t i = r.size() - 1; i > 0; --i) r[i] = r[i - 1] - r[i];
    r[0] = -r[0];
    for (std::size_t i = 0; i < v.size(); ++i) r[i] += c[j] * v[i];
  }
  return PolynomialZ(std::move(r), PolyKind::transformed);
}

mpq_class eval_exact(const PolynomialZ& p, const mpq_class& x) {
  mpz_class re, im;
  homogeneous_horner(p.coeffs(), x.get_num(), mpz_class(0), x.get_den(), re, im);
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), p.degree());
  mpq_class out(re, den);
  out.canonicalize();
  return out;
}

RationalComplex eval_exact(const PolynomialZ& p, const RationalComplex& z) {
  mpz_class a, b, d;
  to_common_denominator(z, a, b, d);
  mpz_class re, im;
  homogeneous_horner(p.coeffs(), a, b, d, re, im);
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), d.get_mpz_t(), p.degree());
  return RationalComplex(mpq_class(re, den), mpq_class(im, den));
}

int sign_at(const PolynomialZ& p, const mpq_class& x) {
  mpz_class re, im;
  homogeneous_horner(p.coeffs(), x.get_num(), mpz_class(0), x.get_den(), re, im);
  return sgn(re);
}

long default_precision_cap() {
  if (const char* env = std::getenv("APERY_MAX_PRECISION_BITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64) return v;
  }
  return kDefaultPrecisionCap;
}

long initial_precision_bits(std::size_t degree, double abs_z, double rel_tol) {
  const double root = std::sqrt(abs_z);
  const double growth = std::pow(1.0 + 2.0 * root + 2.0 * std::sqrt(abs_z + root), 2.0);
  const double growth_bits = static_cast<double>(degree) * std::log2(growth);
  const double guard = std::ceil(-std::log2(rel_tol)) + std::ceil(std::log2(3.0 * degree + 2.0)) + 8.0;
  return static_cast<long>(std::max(64.0, std::ceil(growth_bits)) + std::max(0.0, guard));
}

CertifiedComplex eval_certified(const PolynomialZ& p, const RationalComplex& z, double rel_tol,
                                PrecisionOptions opts) {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw DomainError("eval_certified: rel_tol must be positive and finite");
  }
  const long cap = opts.max_bits > 0 ? opts.max_bits : default_precision_cap();
  const std::size_t n = p.degree();

  if (n == 0) {
    // constant polynomial: stored exactly, zero error
    const long bits = std::max<long>(64, static_cast<long>(mpz_sizeinbase(p[0].get_mpz_t(), 2)));
    CertifiedComplex out{BigComplex(bits), BigFloat(kBoundBits), bits};
    mpfr_set_z(out.value.re.get(), p[0].get_mpz_t(), MPFR_RNDN);
    return out;
  }

  if (rel_tol < 1e-30) {
    const long bits = std::max<long>(64, static_cast<long>(std::ceil(-std::log2(rel_tol))) + 8);
    return round_exact(eval_exact(p, z), bits);
  }

  const BigFloat series = abs_series_bound(p, z);
  const double abs_z = std::hypot(z.re.get_d(), z.im.get_d());
  long bits = std::min(cap, initial_precision_bits(n, abs_z, rel_tol));
  BigFloat rel(kBoundBits, rel_tol);

  for (;;) {
    CertifiedComplex out{mpfr_horner(p, z, bits), BigFloat(kBoundBits), bits};
    mpfr_mul(out.abs_error_bound.get(), gamma_bound(3 * n + 2, bits).get(), series.get(), MPFR_RNDU);

    // accept when bound ≤ rel_tol·(|value| - bound), a lower bound on rel_tol·|true|
    BigFloat lower(kBoundBits);
    mpfr_hypot(lower.get(), out.value.re.get(), out.value.im.get(), MPFR_RNDD);
    mpfr_sub(lower.get(), lower.get(), out.abs_error_bound.get(), MPFR_RNDD);
    mpfr_mul(lower.get(), lower.get(), rel.get(), MPFR_RNDD);
    if (lower.sign() > 0 && mpfr_lessequal_p(out.abs_error_bound.get(), lower.get())) return out;

    if (bits >= cap) {
      throw PrecisionExhausted("eval_certified: precision cap of " + std::to_string(cap) +
                                   " bits reached before the value separated from its error bound",
                               out.relative_error_bound(), bits);
    }
    bits = std::min(cap, 2 * bits);
  }
}

CertifiedComplex eval_certified(const PolynomialZ& p, std::complex<double> z, double rel_tol,
                                PrecisionOptions opts) {
  return eval_certified(p, RationalComplex::from(z), rel_tol, opts);
}

}  // namespace apery::exact
