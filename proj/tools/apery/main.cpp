// apery: exact Apéry numbers and polynomials, their asymptotics, zeros and
// limit measures, as JSON or CSV tables.
//
// Exit codes: 0 ok, 1 selftest failure or internal error, 2 domain (invalid
// input), 3 tolerance (precision or numerical failure), 4 consistency fault.

#include "commands.hpp"
#include "output.hpp"

#include "apery/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitDomain = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitConsistency = 4;

int report(const std::exception& e, int code) {
  std::cerr << "apery: error: " << e.what() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace apery::cli;
  RunConfig cfg;
  std::string format = "json";
  std::string out_path;

  CLI::App app{"Apéry numbers and polynomials: exact values, asymptotics, zeros and limit measures"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the table to this file instead of stdout");
  app.add_option("--threads", cfg.threads, "Worker threads for grid sweeps (0 = hardware)");

  const auto n_opt = [&](CLI::App* s, const std::string& help) {
    s->add_option("--n", cfg.n, help)->delimiter(',');
  };
  const auto z_opt = [&](CLI::App* s) {
    s->add_option("--z", cfg.z, "Point \"re,im\" or \"re\" of rational literals; repeat for several");
  };
  const auto tol_opt = [&](CLI::App* s, const std::string& help) { s->add_option("--tol", cfg.tol, help); };
  const auto kind_opt = [&](CLI::App* s) {
    s->add_option("--kind", cfg.kind, "Measure: nu on [-1,1] or mu on (-inf,0]")->check(CLI::IsMember({"nu", "mu"}));
  };

  std::map<CLI::App*, std::function<Table(const RunConfig&)>> dispatch;

  auto* numbers = app.add_subcommand("numbers", "b_0..b_{n-max}, ratios and the classical estimate");
  numbers->add_option("--n-max", cfg.n_max, "Last index")->required();
  numbers->add_option("--from", cfg.n_from, "First index to print");
  numbers->add_option("--method", cfg.method, "recurrence, sum, or both (adds a cross-check column)");
  dispatch[numbers] = cmd_numbers;

  auto* asymp = app.add_subcommand("asymp", "exact B_n(z) against the leading term");
  n_opt(asymp, "Indices, comma separated");
  z_opt(asymp);
  tol_opt(asymp, "Relative tolerance of the exact side (default 1e-20)");
  dispatch[asymp] = cmd_asymp;

  auto* osc = app.add_subcommand("oscillation", "exact B_n(-x) against the oscillatory form");
  n_opt(osc, "Index");
  osc->add_option("--theta", cfg.theta, "theta values in (0,1), comma separated")->delimiter(',');
  osc->add_option("--grid", cfg.grid, "Use theta_i = (i+1/2)/grid when --theta is absent (default 10)");
  osc->add_flag("--adjust", cfg.adjust, "Shift nodes with |cos(phase)| < 0.5 by 1/(2n)");
  osc->add_flag("--predicted", cfg.predicted, "Predicted against isolated zeros instead");
  dispatch[osc] = cmd_oscillation;

  auto* zeros = app.add_subcommand("zeros", "certified isolating intervals of the zeros");
  n_opt(zeros, "Degree");
  zeros->add_option("--n-max", cfg.n_max, "Sweep degrees 1..n-max and report counts");
  tol_opt(zeros, "Interval width: absolute on (-1,1), relative on (-inf,0) (default 1e-12)");
  zeros->add_flag("--transformed", cfg.transformed, "Zeros of the transformed polynomial on (-1,1)");
  dispatch[zeros] = cmd_zeros;

  auto* measure = app.add_subcommand("measure", "density, CDF, weight and pushforward of a limit measure");
  kind_opt(measure);
  measure->add_option("--grid", cfg.grid, "Number of sample points (default 20)");
  n_opt(measure, "Also compare with the zeros of degree n");
  tol_opt(measure, "Quadrature tolerance of the CDF (default 1e-10)");
  dispatch[measure] = cmd_measure;

  auto* potential = app.add_subcommand("potential", "logarithmic potential: closed form, quadrature, zeros");
  kind_opt(potential);
  z_opt(potential);
  n_opt(potential, "Also evaluate the potential of the zero-counting measure of degree n");
  tol_opt(potential, "Quadrature tolerance (default 1e-9)");
  dispatch[potential] = cmd_potential;

  auto* sv = app.add_subcommand("saddle-verify", "numeric saddle estimate against analytic and exact values");
  n_opt(sv, "Indices, comma separated");
  z_opt(sv);
  sv->add_option("--x", cfg.x, "Point -x on the cut, x a positive rational literal");
  sv->add_option("--grid", cfg.grid, "Also evaluate the integral on this many points per axis");
  dispatch[sv] = cmd_saddle_verify;

  auto* lemma = app.add_subcommand("lemma32", "grid maximum of |e^{-p}| over the torus");
  z_opt(lemma);
  lemma->add_option("--x", cfg.x, "Point -x on the cut, x a positive rational literal");
  lemma->add_option("--grid", cfg.grid, "Odd grid size per axis, at least 51 (default 101)");
  dispatch[lemma] = cmd_lemma32;

  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_option("--criterion", cfg.criteria, "Criterion ids, comma separated (default all)")->delimiter(',');
  dispatch[self] = cmd_selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  try {
    Table table;
    for (auto& [sub, run] : dispatch) {
      if (sub->parsed()) table = run(cfg);
    }
    const Format fmt = format == "csv" ? Format::csv : Format::json;
    if (out_path.empty()) {
      write(table, fmt, std::cout);
    } else {
      std::ofstream file(out_path);
      if (!file) throw std::runtime_error("cannot open " + out_path);
      write(table, fmt, file);
    }
    if (table.command == "selftest" && table.summary["failed"].get<int>() > 0) return kExitFailure;
    return kExitOk;
  } catch (const apery::DomainError& e) {
    return report(e, kExitDomain);
  } catch (const apery::NotSimpleSaddle& e) {
    return report(e, kExitDomain);
  } catch (const apery::ToleranceError& e) {
    return report(e, kExitTolerance);
  } catch (const apery::EvaluationError& e) {
    return report(e, kExitTolerance);
  } catch (const apery::BranchAmbiguity& e) {
    return report(e, kExitTolerance);
  } catch (const apery::ConsistencyFault& e) {
    return report(e, kExitConsistency);
  } catch (const std::exception& e) {
    return report(e, kExitFailure);
  }
}
