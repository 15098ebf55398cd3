#ifndef APERY_SADDLE_HPP
#define APERY_SADDLE_HPP

// Generic multivariate saddle-point estimate for I(n) = ∫ e^{-n p(t)} q(t) dt
// over a box, a tensor trapezoid oracle for the same integral, and the Apéry
// specialisation whose integral equals B_n(z).

#include "apery/asymptotics.hpp"
#include "apery/scaled.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace apery::saddle {

using Point = std::vector<std::complex<double>>;
using Function = std::function<std::complex<double>(std::span<const std::complex<double>>)>;

/// Dense row-major complex r×r matrix.
struct ComplexMatrix {
  std::size_t r = 0;
  std::vector<std::complex<double>> data;

  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : r(dim), data(dim * dim) {}

  std::complex<double>& operator()(std::size_t i, std::size_t j) { return data[i * r + j]; }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return data[i * r + j]; }
};

struct SaddleProblem {
  std::size_t r = 0;
  Function p;
  Function q;
  /// Integration interval per axis.
  std::vector<std::pair<double, double>> box;
  /// Candidate saddle, real coordinates inside the box.
  Point saddle;
  /// Integrand is periodic over the box; the trapezoid rule is then spectrally accurate.
  bool periodic = false;
  /// Constant factor applied to both the integral and its estimate.
  double normalization = 1.0;
};

struct SaddleOptions {
  double grad_tol = 1e-8;
  double det_tol = 1e-12;
  /// Smallest admissible eigenvalue of Re Hess p.
  double definite_margin = 1e-10;
  double gradient_step = 1e-5;
  /// 2^-6 balances the O(h^6) truncation after Richardson against ε/h² roundoff.
  double hessian_step = 0x1p-6;
  double asymmetry_tol = 1e-7;
  int continuation_steps = 64;
};

struct GradientResult {
  std::vector<std::complex<double>> value;
  /// |last Richardson level - previous level| per coordinate.
  std::vector<double> error_estimate;

  double norm() const;
};

struct HessianResult {
  ComplexMatrix value;
  /// Largest |H_ij - H_ji| / max(1, |H_ij|) between the two step orderings.
  double asymmetry = 0;
};

/// Central differences at steps 4h, 2h, h with two Richardson levels. Throws
/// EvaluationError on non-finite values of p.
GradientResult numeric_gradient(const Function& p, const Point& t0, double h = 1e-5);

/// Second-order central differences with two Richardson levels. Off-diagonal
/// entries are formed twice with the step pair swapped; a disagreement above
/// asymmetry_tol throws EvaluationError.
HessianResult numeric_hessian(const Function& p, const Point& t0, double h = 0x1p-6,
                              double asymmetry_tol = 1e-7);

/// How √det Hess was fixed: det is tracked along Re H + s·i·Im H, s ∈ [0, 1].
struct BranchCertificate {
  int steps = 0;
  /// Largest |Δ arg det| between consecutive samples.
  double max_step_arg = 0;
  /// Accumulated arg det at s = 1; arg √det is half of it.
  double total_arg = 0;
  /// Smallest |det| met on the path.
  double min_abs_det = 0;
  std::complex<double> sqrt_det;
};

struct SaddleEstimate {
  /// (2π/n)^{r/2} e^{-n p(s)} q(s) / √det Hess p(s), times the normalization.
  LogComplex value;
  unsigned n = 0;
  std::complex<double> det_hess;
  ComplexMatrix hessian;
  double gradient_norm = 0;
  /// Smallest eigenvalue of Re Hess p.
  double min_real_eigenvalue = 0;
  BranchCertificate branch_certificate;
};

/// Validates the saddle hypotheses, then evaluates the leading-order formula.
/// Throws NotSimpleSaddle when a hypothesis fails and BranchAmbiguity when the
/// √det continuation cannot be tracked.
SaddleEstimate saddle_estimate(const SaddleProblem& prob, unsigned n, const SaddleOptions& opts = {});

struct DirectIntegral {
  /// I(2M) · e^{-log_scale}; the scale keeps large n representable.
  std::complex<double> scaled_value;
  /// Re(-n p(saddle))
  long double log_scale = 0;
  /// |I(M) - I(2M)| · e^{-log_scale}, the doubling check.
  double scaled_doubling_difference = 0;
  std::size_t points_per_axis = 0;
  /// Set for non-periodic boxes, where endpoint terms limit the accuracy.
  bool endpoint_warning = false;

  std::complex<double> value() const;
  double doubling_difference() const;
  double relative_doubling_difference() const;
};

/// Tensor trapezoid rule with 2M points per axis; the M-point result is the
/// even-index subgrid. Slabs are summed pairwise, so the result does not depend
/// on the thread count. threads = 0 uses the hardware concurrency.
DirectIntegral direct_integral(const SaddleProblem& prob, unsigned n, std::size_t M,
                               unsigned threads = 0);

/// r = 3 problem on [-π, π]³ whose normalised integral is B_n(z):
///   p(t) = log(1-a e^{it₂}) + log(1-a e^{i(t₁-t₂)}) - log(1+b e^{it₃}) - log(1+b e^{-i(t₁+t₃)})
///   q(t) = 1 / ((1-a e^{it₂})(1-a e^{i(t₁-t₂)}))
/// Logs are principal; e^{-np} is single valued for integer n.
SaddleProblem apery_saddle_problem(std::complex<double> z);

/// Same problem with a, b continued onto the cut from above.
SaddleProblem apery_saddle_problem(const asymptotics::NegativeAxisPoint& point);

/// 2·Re of the origin estimate of the continued problem at -x.
LogReal negative_axis_estimate(double x, unsigned n, const SaddleOptions& opts = {});

struct LocalMaximum {
  std::array<double, 3> point;
  double value = 0;
};

struct ModulusMaxReport {
  std::size_t M = 0;
  std::array<double, 3> argmax{};
  double max_value = 0;
  double value_at_origin = 0;
  /// Largest grid value other than the argmax node.
  double second_largest = 0;
  /// Grid-local maxima under periodic 26-neighbourhoods, by decreasing value.
  std::vector<LocalMaximum> local_maxima;
  /// Grid spacing 2π/(M-1).
  double spacing = 0;

  bool argmax_at_origin() const;
};

/// H(t) = |e^{-p(t)}| on the grid t_j = -π + 2πj/(M-1), j = 0..M-1, whose
/// last node repeats the first. M must be odd and at least 51.
ModulusMaxReport verify_modulus_max(std::complex<double> z, std::size_t M, unsigned threads = 0);
ModulusMaxReport verify_modulus_max(const asymptotics::NegativeAxisPoint& point, std::size_t M,
                                    unsigned threads = 0);

/// (-4 arg a, -2 arg a, -2 arg b) for the continued point, the second maximum of H.
std::array<double, 3> second_saddle(const asymptotics::NegativeAxisPoint& point);

}  // namespace apery::saddle

#endif  // APERY_SADDLE_HPP
