#include "commands.hpp"

#include "criteria.hpp"
#include "parse.hpp"

#include "apery/asymptotics.hpp"
#include "apery/errors.hpp"
#include "apery/exact.hpp"
#include "apery/measures.hpp"
#include "apery/saddle.hpp"
#include "apery/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace apery::cli {

namespace {

using nlohmann::ordered_json;
using cd = std::complex<double>;
using exact::RationalComplex;

constexpr long double kLn10 = 2.302585092994045684017999515919882L;
constexpr double kGate = 0.5;
constexpr unsigned kDefaultGrid = 20;
constexpr unsigned kDefaultOscillationGrid = 10;
constexpr std::size_t kDefaultLemmaGrid = 101;

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

double log10_of(long double ln) { return static_cast<double>(ln / kLn10); }

double log10_of(const mpq_class& q) {
  if (sgn(q) == 0) return -INFINITY;
  return log10_of(exact::log_abs(q.get_num()) - exact::log_abs(q.get_den()));
}

LogReal log_real(const mpq_class& q) {
  return {exact::log_abs(q.get_num()) - exact::log_abs(q.get_den()), sgn(q)};
}

LogComplex log_complex(const exact::CertifiedComplex& c) { return {{c.log_abs(), c.arg()}}; }

unsigned single_n(const RunConfig& cfg, const std::string& cmd, unsigned min_n) {
  require(cfg.n.size() == 1, cmd + ": exactly one --n is required");
  require(cfg.n.front() >= min_n, cmd + ": --n must be at least " + std::to_string(min_n));
  return cfg.n.front();
}

std::vector<unsigned> n_list(const RunConfig& cfg, const std::string& cmd, unsigned min_n) {
  require(!cfg.n.empty(), cmd + ": at least one --n is required");
  for (const unsigned n : cfg.n) require(n >= min_n, cmd + ": every --n must be at least " + std::to_string(min_n));
  return cfg.n;
}

std::vector<RationalComplex> z_list(const RunConfig& cfg, const std::string& cmd) {
  require(!cfg.z.empty(), cmd + ": at least one --z is required");
  std::vector<RationalComplex> out;
  for (const auto& s : cfg.z) out.push_back(parse_complex(s));
  return out;
}

bool on_cut(const RationalComplex& z) { return z.is_real() && sgn(z.re) <= 0; }

void require_off_cut(const std::vector<RationalComplex>& zs, const std::string& cmd) {
  for (const auto& z : zs) {
    require(!on_cut(z), cmd + ": z = " + format_rational(z.re) + " lies on the cut (-inf, 0]");
  }
}

mpq_class positive_x(const RunConfig& cfg, const std::string& cmd) {
  require(cfg.x.has_value(), cmd + ": --x is required");
  const mpq_class x = parse_rational(*cfg.x);
  require(sgn(x) > 0, cmd + ": --x must be positive");
  return x;
}

double positive_tol(const RunConfig& cfg, double fallback, const std::string& cmd) {
  const double tol = cfg.tol.value_or(fallback);
  require(tol > 0 && std::isfinite(tol), cmd + ": --tol must be positive");
  return tol;
}

zeros::MeasureKind measure_kind(const RunConfig& cfg, const std::string& cmd) {
  require(cfg.kind == "nu" || cfg.kind == "mu", cmd + ": --kind must be nu or mu");
  return cfg.kind == "nu" ? zeros::MeasureKind::nu : zeros::MeasureKind::mu;
}

ordered_json nullable(double v, bool present) { return present ? ordered_json(v) : ordered_json(nullptr); }

// 4 z^{3/4} / (1+√z)^{5/2} on principal branches
cd closed_form_det(cd z) { return 4.0 * std::exp(0.75 * std::log(z) - 2.5 * std::log(1.0 + std::sqrt(z))); }

}  // namespace

// --- numbers -----------------------------------------------------------------

Table cmd_numbers(const RunConfig& cfg) {
  require(cfg.n_max.has_value() && *cfg.n_max >= 1, "numbers: --n-max of at least 1 is required");
  const unsigned n_max = *cfg.n_max;
  require(cfg.n_from <= n_max, "numbers: --from exceeds --n-max");
  require(cfg.method == "recurrence" || cfg.method == "sum" || cfg.method == "both",
          "numbers: --method must be recurrence, sum or both");
  const bool both = cfg.method == "both";

  Table t;
  t.command = "numbers";
  t.config = {{"n_max", n_max}, {"from", cfg.n_from}, {"method", cfg.method}};
  t.columns = {"n", "b_n", "digits", "log10_b_n", "ratio", "ratio_over_limit_minus_1", "classical_ratio"};
  if (both) t.columns.push_back("agrees");

  const auto seq = cfg.method == "sum" ? exact::apery_sequence_sum(n_max) : exact::apery_sequence_rec(n_max);
  exact::AperySequence other;
  if (both) other = exact::apery_sequence_sum(n_max);
  const double limit = std::pow(1.0 + std::numbers::sqrt2, 4);
  bool all_agree = true;
  for (unsigned n = cfg.n_from; n <= n_max; ++n) {
    const mpz_class& b = seq.values[n];
    std::vector<ordered_json> row{n, b.get_str(), b.get_str().size(), log10_of(exact::log_abs(b))};
    if (n >= 1) {
      const double ratio = mpq_class(b, seq.values[n - 1]).get_d();
      const long double classical = std::exp(exact::log_abs(b) - asymptotics::classical_estimate(n).log_abs());
      row.insert(row.end(), {ratio, ratio / limit - 1, static_cast<double>(classical)});
    } else {
      row.insert(row.end(), {nullptr, nullptr, nullptr});
    }
    if (both) {
      const bool agree = b == other.values[n];
      all_agree = all_agree && agree;
      row.push_back(agree);
    }
    t.add_row(std::move(row));
  }
  t.summary["limit_ratio"] = limit;
  if (both) t.summary["all_agree"] = all_agree;
  t.notes.push_back("ratio = b_n/b_{n-1}; classical_ratio = b_n / ((1+sqrt2)^{4n+2} / (2 pi n sqrt2)^{3/2})");
  return t;
}

// --- asymp -------------------------------------------------------------------

Table cmd_asymp(const RunConfig& cfg) {
  const auto ns = n_list(cfg, "asymp", 0);
  const auto zs = z_list(cfg, "asymp");
  require_off_cut(zs, "asymp");
  const double tol = positive_tol(cfg, 1e-20, "asymp");

  Table t;
  t.command = "asymp";
  t.config = {{"n", ns}, {"z", cfg.z}, {"tol", tol}};
  t.columns = {"n", "z", "log10_abs_exact", "arg_exact", "log10_abs_leading", "arg_leading", "rel_error",
               "error_ratio_to_previous", "note"};
  for (const auto& zr : zs) {
    const cd z = zr.to_complex();
    std::optional<double> previous;
    for (const unsigned n : ns) {
      const auto ex = exact::eval_certified(exact::apery_poly(n), zr, tol);
      std::vector<ordered_json> row{n, format_complex(z), log10_of(ex.log_abs()), static_cast<double>(ex.arg())};
      if (n == 0) {
        row.insert(row.end(), {nullptr, nullptr, nullptr, nullptr, "skipped: the leading term needs n >= 1"});
      } else {
        const auto lead = asymptotics::leading_term(n, z);
        const double err = static_cast<double>(std::abs(log_complex(ex).ratio_to(lead) - 1.0L));
        row.insert(row.end(), {log10_of(lead.log_abs()), static_cast<double>(lead.arg()), err,
                               nullable(previous ? err / *previous : 0.0, previous.has_value()), nullptr});
        previous = err;
      }
      t.add_row(std::move(row));
    }
  }
  t.notes.push_back("rel_error = |B_n(z) / leading_term - 1|; exact side certified to --tol");
  return t;
}

// --- oscillation ---------------------------------------------------------------

namespace {

Table predicted_zero_table(unsigned n, const RunConfig& cfg) {
  Table t;
  t.command = "oscillation";
  t.config = {{"n", n}, {"predicted", true}};
  t.columns = {"k", "predicted_theta", "predicted_zero", "exact_zero", "exact_theta", "abs_dtheta"};
  const auto zs = zeros::isolate_zeros(exact::apery_poly(n), {1e-12, cfg.threads});
  std::vector<double> exact_theta;
  for (const double m : zs.midpoints()) exact_theta.push_back(asymptotics::theta_from_x(-m));
  const auto mids = zs.midpoints();
  double worst = 0;
  for (int k = 0; k < static_cast<int>(n); ++k) {
    const double th = asymptotics::predicted_zero_theta(n, k);
    std::size_t best = 0;
    for (std::size_t i = 1; i < exact_theta.size(); ++i) {
      if (std::fabs(exact_theta[i] - th) < std::fabs(exact_theta[best] - th)) best = i;
    }
    const double d = std::fabs(exact_theta[best] - th);
    worst = std::max(worst, d);
    t.add_row({k, th, asymptotics::predicted_zero(n, k), mids[best], exact_theta[best], d});
  }
  t.summary["max_abs_dtheta"] = worst;
  t.notes.push_back("predicted zeros solve f(theta) + n pi theta = pi/2 + k pi; exact_zero is the nearest isolated root in theta");
  return t;
}

}  // namespace

Table cmd_oscillation(const RunConfig& cfg) {
  const unsigned n = single_n(cfg, "oscillation", 1);
  if (cfg.predicted) return predicted_zero_table(n, cfg);

  std::vector<double> thetas = cfg.theta;
  if (thetas.empty()) {
    const unsigned k = cfg.grid.value_or(kDefaultOscillationGrid);
    require(k >= 1, "oscillation: --grid must be at least 1");
    for (unsigned i = 0; i < k; ++i) thetas.push_back((i + 0.5) / k);
  }
  for (const double th : thetas) require(th > 0 && th < 1, "oscillation: every --theta must lie in (0, 1)");

  Table t;
  t.command = "oscillation";
  t.config = {{"n", n}, {"theta", thetas}, {"adjust", cfg.adjust}, {"gate", kGate}};
  t.columns = {"theta", "x", "log10_abs_exact", "sign_exact", "log10_envelope", "phase", "cos_phase",
               "sign_approx", "residual", "gated", "warning"};
  const auto poly = exact::apery_poly(n);
  double worst = 0;
  int gated_rows = 0;
  int sign_mismatches = 0;
  bool any_warning = false;
  for (double th : thetas) {
    if (cfg.adjust && std::fabs(asymptotics::oscillatory_approx_theta(n, th).cos_phase()) < kGate &&
        th + 0.5 / n < 1) {
      th += 0.5 / n;
    }
    // the exact side is evaluated at the double x, which is a dyadic rational
    const double x = asymptotics::x_from_theta(th);
    const auto osc = asymptotics::oscillatory_approx(n, x);
    const mpq_class v = exact::eval_exact(poly, -mpq_class(x));
    const LogReal ex = log_real(v);
    const LogReal approx = osc.value();
    const bool gated = std::fabs(osc.cos_phase()) >= kGate;
    const bool has_residual = ex.sign != 0;
    const double residual = has_residual ? static_cast<double>(approx.ratio_to(ex) - 1.0L) : 0.0;
    if (gated) {
      ++gated_rows;
      worst = std::max(worst, std::fabs(residual));
      if (approx.sign != ex.sign) ++sign_mismatches;
    }
    any_warning = any_warning || osc.domain_warning;
    t.add_row({osc.theta, x, log10_of(v), ex.sign, log10_of(osc.log_envelope), static_cast<double>(osc.phase),
               osc.cos_phase(), approx.sign, nullable(residual, has_residual), gated, osc.domain_warning});
  }
  t.summary["gated_rows"] = gated_rows;
  t.summary["max_gated_abs_residual"] = worst;
  t.summary["gated_sign_mismatches"] = sign_mismatches;
  if (any_warning) t.notes.push_back("rows with warning=true have theta outside [0.02, 0.98]");
  t.notes.push_back("residual = approx / exact - 1; gated rows have |cos(phase)| >= 0.5");
  return t;
}

// --- zeros ---------------------------------------------------------------------

Table cmd_zeros(const RunConfig& cfg) {
  const double tol = positive_tol(cfg, 1e-12, "zeros");
  const zeros::IsolationOptions opts{tol, cfg.threads};
  Table t;
  t.command = "zeros";

  if (cfg.n_max) {
    require(cfg.n.empty(), "zeros: give either --n or --n-max");
    require(*cfg.n_max >= 1, "zeros: --n-max must be at least 1");
    t.config = {{"n_max", *cfg.n_max}, {"tol", tol}, {"transformed", cfg.transformed}};
    t.columns = {"n", "count", "square_free", "predicted_brackets", "in_domain", "max_rel_width"};
    bool all_ok = true;
    for (unsigned n = 1; n <= *cfg.n_max; ++n) {
      const auto p = cfg.transformed ? exact::transformed_poly(n) : exact::apery_poly(n);
      const auto zs = zeros::isolate_zeros(p, opts);
      bool in_domain = true;
      double width = 0;
      for (const auto& r : zs.roots) {
        in_domain = in_domain && (cfg.transformed ? (r.lo > -1 && r.hi < 1) : r.hi < 0);
        width = std::max(width, cfg.transformed ? r.width() : r.width() / std::fabs(r.midpoint()));
      }
      all_ok = all_ok && in_domain && zs.count() == n;
      t.add_row({n, zs.count(), zs.square_free, zs.predicted_brackets, in_domain, width});
    }
    t.summary["all_ok"] = all_ok;
    return t;
  }

  const unsigned n = single_n(cfg, "zeros", 1);
  const auto p = cfg.transformed ? exact::transformed_poly(n) : exact::apery_poly(n);
  const auto zs = zeros::isolate_zeros(p, opts);
  t.config = {{"n", n}, {"tol", tol}, {"transformed", cfg.transformed}};
  t.columns = {"k", "lo", "hi", "midpoint", "width", "multiplicity"};
  for (std::size_t k = 0; k < zs.roots.size(); ++k) {
    const auto& r = zs.roots[k];
    t.add_row({k, format_rational(r.lo), format_rational(r.hi), r.midpoint(), r.width(), r.multiplicity});
  }
  t.summary["degree"] = n;
  t.summary["count"] = zs.count();
  t.summary["square_free"] = zs.square_free;
  t.summary["predicted_brackets"] = zs.predicted_brackets;
  t.summary["domain"] = zs.domain == zeros::ZeroDomain::unit_interval ? "(-1,1)" : "(-inf,0)";
  return t;
}

// --- measure -------------------------------------------------------------------

Table cmd_measure(const RunConfig& cfg) {
  const auto kind = measure_kind(cfg, "measure");
  const bool nu = kind == zeros::MeasureKind::nu;
  const unsigned k = cfg.grid.value_or(kDefaultGrid);
  require(k >= 1, "measure: --grid must be at least 1");
  const double tol = positive_tol(cfg, 1e-10, "measure");
  std::optional<unsigned> n;
  if (!cfg.n.empty()) n = single_n(cfg, "measure", 1);

  Table t;
  t.command = "measure";
  t.config = {{"kind", cfg.kind}, {"grid", k}, {"tol", tol}, {"n", n ? ordered_json(*n) : ordered_json(nullptr)}};
  t.columns = {"x", "density", "cdf", "image_x", "image_cdf", "pushforward_diff", "weight", "equilibrium_residual"};
  if (n) t.columns.push_back("empirical_cdf");

  const auto model = zeros::model(kind);
  std::optional<zeros::ZeroSet> zs;
  std::optional<zeros::EmpiricalCdf> emp;
  if (n) {
    zs = zeros::isolate_zeros(nu ? exact::transformed_poly(*n) : exact::apery_poly(*n), {1e-9, cfg.threads});
    emp.emplace(*zs);
  }
  double worst_push = 0;
  double worst_residual = 0;
  for (unsigned i = 0; i < k; ++i) {
    const double u = (i + 0.5) / k;
    // ν: uniform in (-1, 1); μ: uniform in θ, so the heavy tail is sampled
    const double x = nu ? -1 + 2 * u : -asymptotics::x_from_theta(u);
    const double cdf = nu ? zeros::nu_cdf(x, tol) : zeros::mu_cdf(x, tol);
    // ν side maps forward by T, μ side back by T^{-1}(x) = (1+x)/(1-x)
    const double image = nu ? zeros::pushforward(x) : (1 + x) / (1 - x);
    const double image_cdf = nu ? zeros::mu_cdf(image, tol) : zeros::nu_cdf(image, tol);
    const double push = std::fabs(cdf - image_cdf);
    worst_push = std::max(worst_push, push);
    std::vector<ordered_json> row{x, model.density(x), cdf, image, image_cdf, push};
    if (nu) {
      const double res = zeros::equilibrium_residual(x);
      worst_residual = std::max(worst_residual, std::fabs(res));
      row.insert(row.end(), {zeros::weight_w(x), res});
    } else {
      row.insert(row.end(), {nullptr, nullptr});
    }
    if (emp) row.push_back((*emp)(x));
    t.add_row(std::move(row));
  }
  t.summary["mass"] = zeros::mass(model);
  t.summary["robin_constant"] = model.robin_constant;
  t.summary["max_pushforward_diff"] = worst_push;
  if (nu) t.summary["max_abs_equilibrium_residual"] = worst_residual;
  if (zs) t.summary["ks_distance"] = zeros::ks_distance(*zs, model);
  return t;
}

// --- potential -----------------------------------------------------------------

Table cmd_potential(const RunConfig& cfg) {
  const auto kind = measure_kind(cfg, "potential");
  const bool nu = kind == zeros::MeasureKind::nu;
  const auto zs = z_list(cfg, "potential");
  for (const auto& z : zs) {
    const bool on_support = z.is_real() && (nu ? (z.re >= -1 && z.re <= 1) : sgn(z.re) <= 0);
    require(!on_support, "potential: z = " + format_rational(z.re) + " lies on the support");
  }
  const double tol = positive_tol(cfg, 1e-9, "potential");
  std::optional<unsigned> n;
  if (!cfg.n.empty()) n = single_n(cfg, "potential", 1);

  Table t;
  t.command = "potential";
  t.config = {{"kind", cfg.kind}, {"z", cfg.z}, {"tol", tol}, {"n", n ? ordered_json(*n) : ordered_json(nullptr)}};
  t.columns = {"z", "closed_form", "from_density", "abs_diff"};
  if (n) t.columns.insert(t.columns.end(), {"discrete", "discrete_abs_error"});

  const auto model = zeros::model(kind);
  std::optional<exact::PolynomialZ> poly;
  long double log_lead = 0;
  if (n && !nu) {
    poly = exact::apery_poly(*n);
    log_lead = exact::log_abs(poly->coeffs().back());
  }
  for (const auto& zr : zs) {
    const cd z = zr.to_complex();
    const double closed = model.potential(z);
    const double quad = zeros::potential_from_density(z, model, tol);
    std::vector<ordered_json> row{format_complex(z), closed, quad, std::fabs(closed - quad)};
    if (n) {
      // U^{σ_n}(z) = (log|lc| - log|p(z)|) / n for the zero-counting measure σ_n of p
      const double discrete =
          nu ? zeros::potentials_from_zeros(*n, z)
             : static_cast<double>((log_lead - exact::eval_certified(*poly, zr, 1e-12).log_abs()) / *n);
      row.insert(row.end(), {discrete, std::fabs(discrete - closed)});
    }
    t.add_row(std::move(row));
  }
  t.summary["robin_constant"] = model.robin_constant;
  return t;
}

// --- saddle-verify ---------------------------------------------------------------

Table cmd_saddle_verify(const RunConfig& cfg) {
  const auto ns = n_list(cfg, "saddle-verify", 1);
  Table t;
  t.command = "saddle-verify";

  if (cfg.x) {
    require(cfg.z.empty(), "saddle-verify: give either --z or --x");
    const mpq_class xq = positive_x(cfg, "saddle-verify");
    const double x = xq.get_d();
    t.config = {{"n", ns}, {"x", format_rational(xq)}};
    t.columns = {"n", "x", "theta", "log10_abs_estimate", "sign_estimate", "identity_diff", "log10_abs_exact",
                 "sign_exact", "rel_error", "cos_phase", "gated"};
    for (const unsigned n : ns) {
      const auto est = saddle::negative_axis_estimate(x, n);
      const auto osc = asymptotics::oscillatory_approx(n, x);
      const mpq_class v = exact::eval_exact(exact::apery_poly(n), -xq);
      const LogReal ex = log_real(v);
      const double identity = static_cast<double>(std::fabs(est.ratio_to(osc.value()) - 1.0L));
      const bool has_err = ex.sign != 0;
      const double err = has_err ? static_cast<double>(std::fabs(est.ratio_to(ex) - 1.0L)) : 0.0;
      t.add_row({n, x, osc.theta, log10_of(est.log_abs), est.sign, identity, log10_of(v), ex.sign,
                 nullable(err, has_err), osc.cos_phase(), std::fabs(osc.cos_phase()) >= kGate});
    }
    t.notes.push_back("estimate = 2 Re of the saddle estimate at the origin of the problem continued from above");
    return t;
  }

  const auto zs = z_list(cfg, "saddle-verify");
  require_off_cut(zs, "saddle-verify");
  std::optional<std::size_t> grid;
  if (cfg.grid) {
    require(*cfg.grid >= 8, "saddle-verify: --grid must be at least 8");
    grid = *cfg.grid;
  }
  t.config = {{"n", ns}, {"z", cfg.z}, {"grid", grid ? ordered_json(*grid) : ordered_json(nullptr)}};
  t.columns = {"n", "z", "gradient_norm", "det_hess_re", "det_hess_im", "det_closed_re", "det_closed_im",
               "det_abs_error", "min_real_eigenvalue", "log10_abs_estimate", "arg_estimate", "rel_error_vs_leading"};
  if (grid) t.columns.insert(t.columns.end(), {"log10_abs_direct", "rel_error_direct_vs_exact", "doubling_difference"});
  for (const auto& zr : zs) {
    const cd z = zr.to_complex();
    const auto prob = saddle::apery_saddle_problem(z);
    const cd det_ref = closed_form_det(z);
    for (const unsigned n : ns) {
      const auto est = saddle::saddle_estimate(prob, n);
      const double lead_err =
          static_cast<double>(std::abs(est.value.ratio_to(asymptotics::leading_term(n, z)) - 1.0L));
      std::vector<ordered_json> row{n, format_complex(z), est.gradient_norm, est.det_hess.real(),
                                    est.det_hess.imag(), det_ref.real(), det_ref.imag(),
                                    std::abs(est.det_hess - det_ref), est.min_real_eigenvalue,
                                    log10_of(est.value.log_abs()), static_cast<double>(est.value.arg()), lead_err};
      if (grid) {
        const auto d = saddle::direct_integral(prob, n, *grid, cfg.threads);
        const auto ex = exact::eval_certified(exact::apery_poly(n), zr, 1e-15);
        const std::complex<long double> log_direct = std::log(std::complex<long double>(d.scaled_value)) + d.log_scale;
        const double err = static_cast<double>(std::abs(std::exp(log_direct - log_complex(ex).log_value) - 1.0L));
        row.insert(row.end(), {log10_of(log_direct.real()), err, d.relative_doubling_difference()});
      }
      t.add_row(std::move(row));
    }
  }
  t.notes.push_back("det_closed = 4 z^{3/4} / (1+sqrt z)^{5/2}; rel_error_vs_leading compares with the analytic leading term");
  return t;
}

// --- lemma32 -------------------------------------------------------------------

Table cmd_lemma32(const RunConfig& cfg) {
  const std::size_t m = cfg.grid.value_or(kDefaultLemmaGrid);
  require(m >= 51 && m % 2 == 1, "lemma32: --grid must be odd and at least 51");
  Table t;
  t.command = "lemma32";
  t.columns = {"z", "M", "argmax_t1", "argmax_t2", "argmax_t3", "argmax_at_origin", "max_value", "value_at_origin",
               "second_largest", "strict", "local_maxima"};
  const auto add = [&](const std::string& label, const saddle::ModulusMaxReport& r) {
    t.add_row({label, r.M, r.argmax[0], r.argmax[1], r.argmax[2], r.argmax_at_origin(), r.max_value,
               r.value_at_origin, r.second_largest, r.second_largest < r.max_value, r.local_maxima.size()});
  };

  if (cfg.x) {
    require(cfg.z.empty(), "lemma32: give either --z or --x");
    const mpq_class xq = positive_x(cfg, "lemma32");
    const auto point = asymptotics::NegativeAxisPoint::from_x(xq.get_d());
    const auto r = saddle::verify_modulus_max(point, m, cfg.threads);
    t.config = {{"x", format_rational(xq)}, {"grid", m}};
    add("-" + format_rational(xq) + ",0+", r);
    const auto second = saddle::second_saddle(point);
    ordered_json maxima = ordered_json::array();
    double offset = INFINITY;
    for (const auto& lm : r.local_maxima) {
      double d = 0;
      for (int i = 0; i < 3; ++i) {
        d = std::max(d, std::fabs(std::remainder(lm.point[i] - second[i], 2 * std::numbers::pi)));
      }
      offset = std::min(offset, d);
      maxima.push_back({{"t", lm.point}, {"value", lm.value}});
    }
    t.summary["local_maxima"] = std::move(maxima);
    t.summary["second_saddle"] = second;
    t.summary["second_saddle_offset"] = offset;
    t.summary["grid_spacing"] = r.spacing;
    t.notes.push_back("second_saddle = (-4 arg a, -2 arg a, -2 arg b) with a, b continued from above, wrapped to [-pi, pi)");
    return t;
  }

  const auto zs = z_list(cfg, "lemma32");
  require_off_cut(zs, "lemma32");
  t.config = {{"z", cfg.z}, {"grid", m}};
  bool all_ok = true;
  for (const auto& zr : zs) {
    const auto r = saddle::verify_modulus_max(zr.to_complex(), m, cfg.threads);
    all_ok = all_ok && r.argmax_at_origin() && r.second_largest < r.max_value;
    add(format_complex(zr.to_complex()), r);
  }
  t.summary["all_strict_at_origin"] = all_ok;
  return t;
}

// --- selftest ------------------------------------------------------------------

Table cmd_selftest(const RunConfig& cfg) {
  std::vector<int> ids = cfg.criteria;
  if (ids.empty()) {
    for (int id = 1; id <= acceptance::kCriterionCount; ++id) ids.push_back(id);
  }
  for (const int id : ids) {
    require(id >= 1 && id <= acceptance::kCriterionCount,
            "selftest: --criterion must lie in 1.." + std::to_string(acceptance::kCriterionCount));
  }
  Table t;
  t.command = "selftest";
  t.config = {{"criteria", ids}, {"threads", cfg.threads}};
  t.columns = {"id", "title", "passed", "seconds", "detail"};
  int failed = 0;
  for (const int id : ids) {
    const auto r = acceptance::run_criterion(id, {cfg.threads});
    if (!r.passed) ++failed;
    t.add_row({r.id, r.title, r.passed, r.seconds, r.detail});
  }
  t.summary["passed"] = static_cast<int>(ids.size()) - failed;
  t.summary["failed"] = failed;
  return t;
}

}  // namespace apery::cli
