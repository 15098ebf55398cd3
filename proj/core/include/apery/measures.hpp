#ifndef APERY_MEASURES_HPP
#define APERY_MEASURES_HPP

// Limit zero distributions: ν on [-1, 1] for B̃_n and its image μ on (-∞, 0]
// for B_n under T(x) = (x-1)/(x+1), with densities, CDFs, logarithmic
// potentials, the weight of the equilibrium problem, and discrete comparisons
// against the exact zeros.

#include "apery/zeros.hpp"

#include <complex>
#include <functional>
#include <utility>

namespace apery::zeros {

enum class MeasureKind { nu, mu };

/// 4·log(1 + √2), the modified Robin constant of ν.
double robin_constant_nu();

/// dν/dx = 1 / (π √(1+x) (1-x)^{3/4} (√2 + √(1-x))^{1/2}) on (-1, 1).
double nu_density(double x);
/// dμ/dx = 1 / (√2 π |x|^{3/4} (1+|x|)^{1/2} (√|x| + √(1+|x|))^{1/2}) on (-∞, 0).
double mu_density(double x);

/// ν([-1, x]) by Gauss–Kronrod quadrature after endpoint substitutions that
/// leave bounded integrands. Throws ToleranceError above abs_tol.
double nu_cdf(double x, double abs_tol = 1e-10);
/// μ((-∞, x]); the tail below -1 is integrated in y = |x|^{-1/2}, no truncation.
double mu_cdf(double x, double abs_tol = 1e-10);

/// U^ν(z) = 4 log(1+√2) - 2 log|√(z+1) + 2√(z-1) + 2√(z-1+√(z-1)√(z+1))|,
/// every root with arg ∈ (-π, π].
double potential_nu(std::complex<double> z);
/// U^μ(z) = 4 log 2 - 2 log|1 + 2(√z + √(z+√z))|, roots with arg ∈ (-π, π].
double potential_mu(std::complex<double> z);

/// w(x) = |√(x+1) + 2√(x-1) + 2√(x-1+√(x-1)√(x+1))|^{-2} on [-1, 1].
double weight_w(double x);

/// U^ν(x) + log(1/w(x)) - 4 log(1+√2); vanishes on (-1, 1).
double equilibrium_residual(double x);

/// T(x) = (x-1)/(x+1), carrying ν onto μ.
inline double pushforward(double x) { return (x - 1.0) / (x + 1.0); }

struct MeasureModel {
  MeasureKind kind = MeasureKind::nu;
  std::pair<double, double> support;
  std::function<double(double)> density;
  std::function<double(double)> cdf;
  std::function<double(std::complex<double>)> potential;
  /// ν only; empty for μ.
  std::function<double(double)> weight;
  /// ν: 4 log(1+√2); μ: 4 log 2, the constant term of its potential.
  double robin_constant = 0;
};

MeasureModel nu_model();
MeasureModel mu_model();
MeasureModel model(MeasureKind kind);

/// Total mass by quadrature.
double mass(const MeasureModel& m, double abs_tol = 1e-12);

/// ∫ log|z - x|^{-1} dm(x) by quadrature, for z off the support.
double potential_from_density(std::complex<double> z, const MeasureModel& m, double abs_tol = 1e-9);

/// U^{ν_n}(z) = (log|B_n(1)| - log|B̃_n(z)|)/n, the potential of the zero-counting
/// measure of B̃_n, for z off [-1, 1].
double potentials_from_zeros(unsigned n, std::complex<double> z);

/// sup |F_n - F| over the jump points of the empirical CDF.
double ks_distance(const ZeroSet& zs, const MeasureModel& m);
/// KS distance for the zeros of B̃_n (ν) or B_n (μ).
double ks_distance(unsigned n, MeasureKind kind, IsolationOptions opts = {1e-9, 0});

}  // namespace apery::zeros

#endif  // APERY_MEASURES_HPP
