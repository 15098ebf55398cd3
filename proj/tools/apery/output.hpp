#ifndef APERY_CLI_OUTPUT_HPP
#define APERY_CLI_OUTPUT_HPP

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace apery::cli {

/// Bumped whenever a column is renamed, removed or changes meaning.
inline constexpr int kSchemaVersion = 1;
/// Significant digits of every real in the output.
inline constexpr int kRealDigits = 17;

enum class Format { json, csv };

/// A command's result: named columns, one row per record, and scalar summary
/// values. Big integers are stored as decimal strings.
struct Table {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> notes;

  /// Appends a row; its length must equal columns.size().
  void add_row(std::vector<nlohmann::ordered_json> row);
};

/// JSON: one object with schema_version, command, config, columns, rows (as
/// objects), summary and notes. CSV: a header line, the rows, then summary and
/// notes as "# key,value" lines.
void write(const Table& table, Format format, std::ostream& out);

}  // namespace apery::cli

#endif  // APERY_CLI_OUTPUT_HPP
