#include "apery/saddle.hpp"

#include "apery/errors.hpp"
#include "parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace apery::saddle {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

cd checked_eval(const Function& f, const Point& t) {
  const cd v = f(t);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError("function returned a non-finite value");
  }
  return v;
}

/// Two Richardson levels for a table with error expansion in even powers of
/// the step, d[k] taken at step h/2^k. Returns {value, |value - previous level|}.
std::pair<cd, double> richardson(const std::array<cd, 3>& d) {
  const cd r0 = (4.0 * d[1] - d[0]) / 3.0;
  const cd r1 = (4.0 * d[2] - d[1]) / 3.0;
  const cd r2 = (16.0 * r1 - r0) / 15.0;
  return {r2, std::abs(r2 - r1)};
}

/// Step actually taken along a real coordinate: (t + h) - t.
double effective_step(cd t, double h) { return (t.real() + h) - t.real(); }

Point shifted(const Point& t, std::size_t i, double di) {
  Point s = t;
  s[i] += di;
  return s;
}

Point shifted(const Point& t, std::size_t i, double di, std::size_t j, double dj) {
  Point s = t;
  s[i] += di;
  s[j] += dj;
  return s;
}

cd mixed_difference(const Function& p, const Point& t, std::size_t i, std::size_t j, double hi,
                    double hj) {
  const double ei = effective_step(t[i], hi);
  const double ej = effective_step(t[j], hj);
  const cd pp = checked_eval(p, shifted(t, i, ei, j, ej));
  const cd pm = checked_eval(p, shifted(t, i, ei, j, -ej));
  const cd mp = checked_eval(p, shifted(t, i, -ei, j, ej));
  const cd mm = checked_eval(p, shifted(t, i, -ei, j, -ej));
  return (pp - pm - mp + mm) / (4.0 * ei * ej);
}

cd mixed_entry(const Function& p, const Point& t, std::size_t i, std::size_t j, double hi, double hj) {
  std::array<cd, 3> d;
  double scale = 1.0;
  for (auto& v : d) {
    v = mixed_difference(p, t, i, j, scale * hi, scale * hj);
    scale *= 0.5;
  }
  return richardson(d).first;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.r, m.r);
  for (std::size_t i = 0; i < m.r; ++i)
    for (std::size_t j = 0; j < m.r; ++j) out(i, j) = m(i, j);
  return out;
}

BranchCertificate continue_sqrt_det(const Eigen::MatrixXcd& h, int steps, double det_tol) {
  const Eigen::MatrixXd re = h.real();
  const Eigen::MatrixXd im = h.imag();
  BranchCertificate cert;
  cert.steps = steps;
  cd previous = Eigen::MatrixXcd(re.cast<cd>()).determinant();
  cert.min_abs_det = std::abs(previous);
  if (previous.real() <= 0.0) throw BranchAmbiguity("det Re Hess is not positive");
  double total = std::arg(previous);
  for (int k = 1; k <= steps; ++k) {
    const double s = static_cast<double>(k) / steps;
    const Eigen::MatrixXcd hs = re.cast<cd>() + cd(0.0, s) * im.cast<cd>();
    const cd det = hs.determinant();
    const double abs_det = std::abs(det);
    cert.min_abs_det = std::min(cert.min_abs_det, abs_det);
    if (abs_det < det_tol) throw BranchAmbiguity("continuation path passes det Hess = 0");
    const double step = std::arg(det / previous);
    if (std::fabs(step) >= kPi / 2) {
      throw BranchAmbiguity("arg det Hess jumps by " + std::to_string(step) + " in one step");
    }
    cert.max_step_arg = std::max(cert.max_step_arg, std::fabs(step));
    total += step;
    previous = det;
  }
  cert.total_arg = total;
  cert.sqrt_det = std::polar(std::sqrt(std::abs(previous)), total / 2.0);
  return cert;
}

struct AperyCoefficients {
  cd a;
  cd b;
};

SaddleProblem make_apery_problem(AperyCoefficients c) {
  SaddleProblem prob;
  prob.r = 3;
  const cd i(0.0, 1.0);
  prob.p = [c, i](std::span<const cd> t) {
    return std::log(1.0 - c.a * std::exp(i * t[1])) + std::log(1.0 - c.a * std::exp(i * (t[0] - t[1]))) -
           std::log(1.0 + c.b * std::exp(i * t[2])) - std::log(1.0 + c.b * std::exp(-i * (t[0] + t[2])));
  };
  prob.q = [c, i](std::span<const cd> t) {
    return 1.0 / ((1.0 - c.a * std::exp(i * t[1])) * (1.0 - c.a * std::exp(i * (t[0] - t[1]))));
  };
  prob.box.assign(3, {-kPi, kPi});
  prob.saddle.assign(3, cd(0.0, 0.0));
  prob.periodic = true;
  prob.normalization = 1.0 / (8.0 * kPi * kPi * kPi);
  return prob;
}

struct Candidate {
  double value = -1.0;
  std::size_t index = 0;
};

// Keeps the two largest (value, index) pairs; ties go to the smaller index.
void offer(Candidate& first, Candidate& second, double value, std::size_t index) {
  auto better = [](double v, std::size_t i, const Candidate& c) {
    return v > c.value || (v == c.value && i < c.index);
  };
  if (better(value, index, first)) {
    second = first;
    first = {value, index};
  } else if (better(value, index, second)) {
    second = {value, index};
  }
}

ModulusMaxReport modulus_max(AperyCoefficients c, std::size_t M, unsigned threads) {
  if (M < 51 || M % 2 == 0) throw DomainError("verify_modulus_max: M must be odd and at least 51");
  const std::size_t K = M - 1;
  const double delta = 2.0 * kPi / static_cast<double>(K);
  const cd i(0.0, 1.0);
  // node index j ↔ t_j = δ(j - K/2), so the origin is j = K/2
  std::vector<double> d1(K), n1(K), d2(K), n2(K);
  for (std::size_t j = 0; j < K; ++j) {
    const double t = delta * (static_cast<double>(j) - static_cast<double>(K / 2));
    const double m = delta * static_cast<double>(j);
    d1[j] = std::abs(1.0 - c.a * std::exp(i * t));
    n1[j] = std::abs(1.0 + c.b * std::exp(i * t));
    d2[j] = std::abs(1.0 - c.a * std::exp(i * m));
    n2[j] = std::abs(1.0 + c.b * std::exp(-i * m));
  }
  // t₁ - t₂ = δ(j₁ - j₂) and t₁ + t₃ ≡ δ(j₁ + j₃) mod 2π
  auto H = [&](std::size_t j1, std::size_t j2, std::size_t j3) {
    return n1[j3] * n2[(j1 + j3) % K] / (d1[j2] * d2[(j1 + K - j2) % K]);
  };
  auto linear = [K](std::size_t j1, std::size_t j2, std::size_t j3) { return (j1 * K + j2) * K + j3; };

  std::vector<Candidate> firsts(K), seconds(K);
  std::vector<std::vector<std::pair<double, std::size_t>>> maxima(K);
  detail::parallel_for(K, threads, [&](std::size_t j1) {
    for (std::size_t j2 = 0; j2 < K; ++j2) {
      for (std::size_t j3 = 0; j3 < K; ++j3) {
        const double v = H(j1, j2, j3);
        const std::size_t here = linear(j1, j2, j3);
        offer(firsts[j1], seconds[j1], v, here);
        bool is_max = true;
        for (int a = -1; a <= 1 && is_max; ++a) {
          for (int b = -1; b <= 1 && is_max; ++b) {
            for (int e = -1; e <= 1 && is_max; ++e) {
              if (a == 0 && b == 0 && e == 0) continue;
              const std::size_t k1 = (j1 + K + a) % K;
              const std::size_t k2 = (j2 + K + b) % K;
              const std::size_t k3 = (j3 + K + e) % K;
              const double w = H(k1, k2, k3);
              // a plateau counts once, at its smallest index
              is_max = linear(k1, k2, k3) < here ? v > w : v >= w;
            }
          }
        }
        if (is_max) maxima[j1].emplace_back(v, here);
      }
    }
  });

  Candidate first, second;
  for (std::size_t j1 = 0; j1 < K; ++j1) {
    offer(first, second, firsts[j1].value, firsts[j1].index);
    if (seconds[j1].value >= 0) offer(first, second, seconds[j1].value, seconds[j1].index);
  }
  auto point_of = [&](std::size_t index) {
    const std::size_t j3 = index % K;
    const std::size_t j2 = (index / K) % K;
    const std::size_t j1 = index / (K * K);
    auto t = [&](std::size_t j) { return delta * (static_cast<double>(j) - static_cast<double>(K / 2)); };
    return std::array<double, 3>{t(j1), t(j2), t(j3)};
  };

  ModulusMaxReport report;
  report.M = M;
  report.spacing = delta;
  report.argmax = point_of(first.index);
  report.max_value = first.value;
  report.second_largest = second.value;
  report.value_at_origin = H(K / 2, K / 2, K / 2);
  std::vector<std::pair<double, std::size_t>> all;
  for (const auto& m : maxima) all.insert(all.end(), m.begin(), m.end());
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return x.first > y.first || (x.first == y.first && x.second < y.second);
  });
  for (const auto& [v, index] : all) report.local_maxima.push_back({point_of(index), v});
  return report;
}

double wrap_angle(double t) {
  double w = std::remainder(t, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

double GradientResult::norm() const {
  double s = 0;
  for (const auto& v : value) s += std::norm(v);
  return std::sqrt(s);
}

GradientResult numeric_gradient(const Function& p, const Point& t0, double h) {
  if (!(h > 0.0)) throw DomainError("numeric_gradient: step must be positive");
  GradientResult out;
  out.value.resize(t0.size());
  out.error_estimate.resize(t0.size());
  for (std::size_t k = 0; k < t0.size(); ++k) {
    // h is the finest step, so roundoff stays at ε|p|/h
    std::array<cd, 3> d;
    double step = 4.0 * h;
    for (auto& v : d) {
      const double e = effective_step(t0[k], step);
      v = (checked_eval(p, shifted(t0, k, e)) - checked_eval(p, shifted(t0, k, -e))) / (2.0 * e);
      step *= 0.5;
    }
    std::tie(out.value[k], out.error_estimate[k]) = richardson(d);
  }
  return out;
}

HessianResult numeric_hessian(const Function& p, const Point& t0, double h, double asymmetry_tol) {
  if (!(h > 0.0)) throw DomainError("numeric_hessian: step must be positive");
  const std::size_t r = t0.size();
  HessianResult out{ComplexMatrix(r), 0.0};
  const cd centre = checked_eval(p, t0);
  for (std::size_t k = 0; k < r; ++k) {
    std::array<cd, 3> d;
    double step = h;
    for (auto& v : d) {
      const double e = effective_step(t0[k], step);
      v = (checked_eval(p, shifted(t0, k, e)) - 2.0 * centre + checked_eval(p, shifted(t0, k, -e))) /
          (e * e);
      step *= 0.5;
    }
    out.value(k, k) = richardson(d).first;
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const cd hij = mixed_entry(p, t0, i, j, h, 0.5 * h);
      const cd hji = mixed_entry(p, t0, j, i, h, 0.5 * h);
      const double asym = std::abs(hij - hji) / std::max(1.0, std::abs(hij));
      out.asymmetry = std::max(out.asymmetry, asym);
      if (asym > asymmetry_tol) {
        throw EvaluationError("numeric_hessian: asymmetry " + std::to_string(asym) +
                              " exceeds tolerance; step too large");
      }
      out.value(i, j) = out.value(j, i) = 0.5 * (hij + hji);
    }
  }
  return out;
}

SaddleEstimate saddle_estimate(const SaddleProblem& prob, unsigned n, const SaddleOptions& opts) {
  if (n < 1) throw DomainError("saddle_estimate: n must be at least 1");
  if (prob.r == 0 || prob.saddle.size() != prob.r) {
    throw DomainError("saddle_estimate: saddle dimension does not match r");
  }
  SaddleEstimate est;
  est.n = n;
  est.gradient_norm = numeric_gradient(prob.p, prob.saddle, opts.gradient_step).norm();
  if (est.gradient_norm > opts.grad_tol) {
    throw NotSimpleSaddle("gradient norm " + std::to_string(est.gradient_norm) + " exceeds grad_tol");
  }
  est.hessian = numeric_hessian(prob.p, prob.saddle, opts.hessian_step, opts.asymmetry_tol).value;
  const Eigen::MatrixXcd h = to_eigen(est.hessian);
  est.det_hess = h.determinant();
  if (std::abs(est.det_hess) < opts.det_tol) throw NotSimpleSaddle("det Hess p vanishes at the saddle");
  const Eigen::MatrixXd re = h.real();
  const Eigen::MatrixXd sym = 0.5 * (re + re.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  est.min_real_eigenvalue = eig.eigenvalues().minCoeff();
  if (!(est.min_real_eigenvalue > opts.definite_margin)) {
    throw NotSimpleSaddle("Re Hess p is not positive definite at the saddle");
  }
  est.branch_certificate = continue_sqrt_det(h, opts.continuation_steps, opts.det_tol);

  const cd p0 = checked_eval(prob.p, prob.saddle);
  const cd q0 = checked_eval(prob.q, prob.saddle);
  if (q0 == cd(0.0, 0.0)) throw NotSimpleSaddle("q vanishes at the saddle");
  using cld = std::complex<long double>;
  const long double nn = n;
  const cld log_value =
      0.5L * static_cast<long double>(prob.r) * std::log(2.0L * std::numbers::pi_v<long double> / nn) -
      nn * cld(p0.real(), p0.imag()) + std::log(cld(q0.real(), q0.imag())) -
      cld(0.5L * std::log(static_cast<long double>(std::abs(est.det_hess))),
          0.5L * static_cast<long double>(est.branch_certificate.total_arg)) +
      std::log(static_cast<long double>(prob.normalization));
  est.value = LogComplex{log_value};
  return est;
}

std::complex<double> DirectIntegral::value() const {
  return scaled_value * static_cast<double>(std::exp(log_scale));
}

double DirectIntegral::doubling_difference() const {
  return scaled_doubling_difference * static_cast<double>(std::exp(log_scale));
}

double DirectIntegral::relative_doubling_difference() const {
  return scaled_doubling_difference / std::abs(scaled_value);
}

DirectIntegral direct_integral(const SaddleProblem& prob, unsigned n, std::size_t M, unsigned threads) {
  if (M < 8) throw DomainError("direct_integral: M must be at least 8");
  if (prob.r == 0 || prob.box.size() != prob.r) throw DomainError("direct_integral: box dimension mismatch");
  const std::size_t r = prob.r;
  const std::size_t fine = 2 * M;
  // periodic: nodes 0..fine-1; otherwise 0..fine with halved endpoint weights
  const std::size_t nodes = prob.periodic ? fine : fine + 1;

  std::vector<std::vector<double>> coord(r), weight(r), coarse_weight(r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto [lo, hi] = prob.box[k];
    const double h = (hi - lo) / static_cast<double>(fine);
    coord[k].resize(nodes);
    weight[k].assign(nodes, h);
    coarse_weight[k].assign(nodes, 0.0);
    for (std::size_t j = 0; j < nodes; ++j) {
      coord[k][j] = lo + h * static_cast<double>(j);
      if (j % 2 == 0) coarse_weight[k][j] = 2.0 * h;
    }
    if (!prob.periodic) {
      weight[k].front() *= 0.5;
      weight[k].back() *= 0.5;
      coarse_weight[k].front() *= 0.5;
      coarse_weight[k].back() *= 0.5;
    }
  }

  const long double log_scale =
      prob.saddle.size() == r ? -static_cast<long double>(n) * checked_eval(prob.p, prob.saddle).real() : 0.0L;
  const double nd = n;
  const double shift = static_cast<double>(log_scale);

  std::vector<cd> fine_sums(nodes), coarse_sums(nodes);
  detail::parallel_for(nodes, threads, [&](std::size_t j0) {
    Point t(r);
    t[0] = coord[0][j0];
    std::vector<std::size_t> idx(r, 0);
    cd fine_sum = 0.0, coarse_sum = 0.0;
    while (true) {
      double w = weight[0][j0];
      double cw = coarse_weight[0][j0];
      for (std::size_t k = 1; k < r; ++k) {
        t[k] = coord[k][idx[k]];
        w *= weight[k][idx[k]];
        cw *= coarse_weight[k][idx[k]];
      }
      const cd pv = prob.p(t);
      const cd v = std::exp(-nd * pv - shift) * prob.q(t);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw EvaluationError("direct_integral: non-finite integrand");
      }
      fine_sum += w * v;
      if (cw != 0.0) coarse_sum += cw * v;
      std::size_t k = r - 1;
      while (k >= 1 && ++idx[k] == nodes) idx[k--] = 0;
      if (k == 0) break;
    }
    fine_sums[j0] = fine_sum;
    coarse_sums[j0] = coarse_sum;
  });

  DirectIntegral out;
  out.log_scale = log_scale + std::log(static_cast<long double>(prob.normalization));
  out.points_per_axis = M;
  out.endpoint_warning = !prob.periodic;
  const cd fine_total = detail::pairwise_sum(fine_sums);
  const cd coarse_total = detail::pairwise_sum(coarse_sums);
  out.scaled_value = fine_total;
  out.scaled_doubling_difference = std::abs(fine_total - coarse_total);
  return out;
}

SaddleProblem apery_saddle_problem(std::complex<double> z) {
  const auto point = asymptotics::BranchedPoint::at(z);
  return make_apery_problem({point.a, point.b});
}

SaddleProblem apery_saddle_problem(const asymptotics::NegativeAxisPoint& point) {
  return make_apery_problem({point.a_minus, point.b_minus});
}

LogReal negative_axis_estimate(double x, unsigned n, const SaddleOptions& opts) {
  const auto point = asymptotics::NegativeAxisPoint::from_x(x);
  const auto est = saddle_estimate(apery_saddle_problem(point), n, opts);
  return LogReal::twice_real_part(est.value);
}

bool ModulusMaxReport::argmax_at_origin() const {
  return argmax[0] == 0.0 && argmax[1] == 0.0 && argmax[2] == 0.0;
}

ModulusMaxReport verify_modulus_max(std::complex<double> z, std::size_t M, unsigned threads) {
  const auto point = asymptotics::BranchedPoint::at(z);
  return modulus_max({point.a, point.b}, M, threads);
}

ModulusMaxReport verify_modulus_max(const asymptotics::NegativeAxisPoint& point, std::size_t M,
                                    unsigned threads) {
  return modulus_max({point.a_minus, point.b_minus}, M, threads);
}

std::array<double, 3> second_saddle(const asymptotics::NegativeAxisPoint& point) {
  const double arg_a = std::arg(point.a_minus);
  const double arg_b = std::arg(point.b_minus);
  return {wrap_angle(-4.0 * arg_a), wrap_angle(-2.0 * arg_a), wrap_angle(-2.0 * arg_b)};
}

}  // namespace apery::saddle
