#ifndef APERY_CLI_COMMANDS_HPP
#define APERY_CLI_COMMANDS_HPP

#include "output.hpp"

#include <optional>
#include <string>
#include <vector>

namespace apery::cli {

/// Parsed flags shared by every subcommand. Each command validates the fields
/// it uses before doing any work and throws DomainError on violations.
struct RunConfig {
  std::vector<unsigned> n;
  std::optional<unsigned> n_max;
  unsigned n_from = 0;
  std::vector<std::string> z;
  std::optional<std::string> x;
  std::vector<double> theta;
  std::optional<unsigned> grid;
  std::optional<double> tol;
  std::string method = "recurrence";
  std::string kind = "nu";
  bool transformed = false;
  bool predicted = false;
  bool adjust = false;
  std::vector<int> criteria;
  unsigned threads = 0;
};

Table cmd_numbers(const RunConfig& cfg);
Table cmd_asymp(const RunConfig& cfg);
Table cmd_oscillation(const RunConfig& cfg);
Table cmd_zeros(const RunConfig& cfg);
Table cmd_measure(const RunConfig& cfg);
Table cmd_potential(const RunConfig& cfg);
Table cmd_saddle_verify(const RunConfig& cfg);
Table cmd_lemma32(const RunConfig& cfg);
/// Summary "failed" counts failing criteria; main exits 1 when it is nonzero.
Table cmd_selftest(const RunConfig& cfg);

}  // namespace apery::cli

#endif  // APERY_CLI_COMMANDS_HPP
