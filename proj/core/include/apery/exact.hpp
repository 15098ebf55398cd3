#ifndef APERY_EXACT_HPP
#define APERY_EXACT_HPP

// Exact big-integer layer: Apéry numbers, Apéry polynomials B_n and their
// transformed versions on [-1, 1], exact rational evaluation, and complex
// evaluation with a rigorous running error bound.

#include "apery/bigfloat.hpp"

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <vector>

namespace apery::exact {

enum class SequenceMethod { direct_sum, recurrence };

/// b_0..b_{n_max} together with how they were produced.
struct AperySequence {
  std::vector<mpz_class> values;
  SequenceMethod method = SequenceMethod::recurrence;

  std::size_t n_max() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

enum class PolyKind {
  apery,        ///< B_n(z) = Σ C(n,k)² C(n+k,k)² z^k
  transformed,  ///< (z+1)^n B_n((z-1)/(z+1)), zeros inside (-1, 1)
};

/// Integer-coefficient polynomial; coeffs()[k] multiplies z^k.
class PolynomialZ {
 public:
  PolynomialZ(std::vector<mpz_class> coeffs, PolyKind kind);

  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
  const mpz_class& operator[](std::size_t k) const { return coeffs_[k]; }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  PolyKind kind() const noexcept { return kind_; }

 private:
  std::vector<mpz_class> coeffs_;
  PolyKind kind_;
};

/// Exact complex rational re + i·im.
struct RationalComplex {
  mpq_class re;
  mpq_class im;

  RationalComplex() = default;
  RationalComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  /// Exact conversion: every finite double is a dyadic rational.
  static RationalComplex from(std::complex<double> z);

  bool is_real() const { return sgn(im) == 0; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

/// Result of a certified evaluation.
///
/// abs_error_bound bounds |value - true| under round-to-nearest MPFR arithmetic
/// with single-rounding complex products (mpfr_fmma/mpfr_fmms).
struct CertifiedComplex {
  BigComplex value;
  BigFloat abs_error_bound;
  long working_precision_bits = 0;

  long double log_abs() const { return value.log_abs(); }
  long double arg() const { return value.arg(); }
  std::complex<double> to_complex() const { return value.to_complex(); }
  /// abs_error_bound / |value|; +inf when value is zero.
  double relative_error_bound() const;
};

// --- integers ---------------------------------------------------------------

/// Exact C(n, k); 0 when k > n.
mpz_class binomial(unsigned long n, unsigned long k);

/// b_n by direct summation of C(n,k)² C(n+k,k)².
mpz_class apery_number_sum(unsigned n);

/// b_0..b_{n_max} by direct summation for every index.
AperySequence apery_sequence_sum(unsigned n_max);

/// b_0..b_{n_max} from the three-term recurrence with b_0 = 1, b_1 = 5.
/// Each step divides by n³ and throws ConsistencyFault if that division is inexact.
AperySequence apery_sequence_rec(unsigned n_max);

/// Natural log of |v| for arbitrarily large integers; -inf for zero.
long double log_abs(const mpz_class& v);

// --- polynomials --------------------------------------------------------------

PolynomialZ apery_poly(unsigned n);
PolynomialZ transformed_poly(unsigned n);

/// (z+1)^d p((z-1)/(z+1)) for a degree-d polynomial p, result tagged `transformed`.
PolynomialZ to_unit_interval(const PolynomialZ& p);

// --- evaluation ---------------------------------------------------------------

mpq_class eval_exact(const PolynomialZ& p, const mpq_class& x);
RationalComplex eval_exact(const PolynomialZ& p, const RationalComplex& z);

/// Sign of p(x) computed in integers only (no rational normalisation).
int sign_at(const PolynomialZ& p, const mpq_class& x);

struct PrecisionOptions {
  long max_bits = 0;  ///< 0 → default_precision_cap()
};

/// APERY_MAX_PRECISION_BITS if set and valid, else 2^20.
long default_precision_cap();

/// Starting precision: max(64, ⌈n·log2 Λ(|z|)⌉) plus guard bits for the
/// tolerance and the Horner error constant, where Λ(r) = (1+2√r+2√(r+√r))².
long initial_precision_bits(std::size_t degree, double abs_z, double rel_tol);

/// p(z) with |value - p(z)| ≤ rel_tol·|p(z)|.
///
/// Horner runs in MPFR with an a-priori bound γ_{3n+2}·Σ|c_k||z|^k; precision
/// doubles until the bound meets rel_tol. Requests tighter than 1e-30 are
/// evaluated exactly and rounded once. Throws PrecisionExhausted when the cap is
/// reached while the value is still not separated from zero.
CertifiedComplex eval_certified(const PolynomialZ& p, const RationalComplex& z, double rel_tol,
                                PrecisionOptions opts = {});
CertifiedComplex eval_certified(const PolynomialZ& p, std::complex<double> z, double rel_tol,
                                PrecisionOptions opts = {});

}  // namespace apery::exact

#endif  // APERY_EXACT_HPP
