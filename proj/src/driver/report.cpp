#include "driver/report.hpp"

#include <json.hpp>

#include "common/error.hpp"

namespace fqp::driver {

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw Error("report '" + name + "': row has " + std::to_string(row.size()) + " cells, expected " +
                std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  csv_line(out, t.columns);
  for (const auto& r : t.rows) csv_line(out, r);
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json doc;
  doc["report"] = t.name;
  doc["version"] = kToolkitVersion;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r[i];
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string render(const Table& t, const std::string& format) {
  if (format == "csv") return to_csv(t);
  if (format == "json") return to_json(t);
  throw ValidationError("unknown format '" + format + "' (expected csv or json)");
}

}  // namespace fqp::driver
