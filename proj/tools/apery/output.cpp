#include "output.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace apery::cli {

using nlohmann::ordered_json;

void Table::add_row(std::vector<ordered_json> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row length differs from the header");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kRealDigits).ptr;
  return std::string(buf, end);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_quote(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return csv_real(v.get<double>());
  if (v.is_number()) return v.dump();
  return csv_quote(v.dump());
}

// JSON has no inf/nan; they become strings so nothing is silently nulled
ordered_json json_cell(const ordered_json& v) {
  if (v.is_number_float() && !std::isfinite(v.get<double>())) return csv_real(v.get<double>());
  return v;
}

}  // namespace

void write(const Table& table, Format format, std::ostream& out) {
  if (format == Format::json) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = table.command;
    doc["real_digits"] = kRealDigits;
    doc["config"] = table.config;
    doc["columns"] = table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    ordered_json summary = ordered_json::object();
    for (const auto& [k, v] : table.summary.items()) summary[k] = json_cell(v);
    doc["summary"] = std::move(summary);
    doc["notes"] = table.notes;
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
  out << "# schema_version," << kSchemaVersion << '\n';
  for (const auto& [k, v] : table.summary.items()) out << "# " << k << ',' << csv_cell(v) << '\n';
  for (const auto& n : table.notes) out << "# note," << csv_quote(n) << '\n';
}

}  // namespace apery::cli
