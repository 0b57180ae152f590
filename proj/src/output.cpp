#include "razumikhin/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace raz {

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    // round-trip through the 9-digit text so JSON and CSV carry the same value
    return std::stod(format_number(*d));
  }
  return std::get<std::string>(c);
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void OutputRecord::input(std::string key, double value) {
  inputs.emplace_back(std::move(key), format_number(value));
}

void OutputRecord::input(std::string key, std::string value) {
  inputs.emplace_back(std::move(key), std::move(value));
}

void OutputRecord::result(std::string key, Cell value) {
  results.emplace_back(std::move(key), std::move(value));
}

void OutputRecord::row(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }

void write_csv(std::ostream& os, const OutputRecord& rec) {
  os << "# schema_version=" << OutputRecord::kSchemaVersion << '\n';
  os << "# command=" << rec.command << '\n';
  for (const auto& [k, v] : rec.inputs) os << "# " << k << '=' << v << '\n';
  for (const auto& [k, v] : rec.results) os << "# " << k << '=' << cell_text(v) << '\n';
  for (std::size_t i = 0; i < rec.columns.size(); ++i) {
    os << (i ? "," : "") << rec.columns[i];
  }
  os << '\n';
  for (const auto& r : rec.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const OutputRecord& rec) {
  nlohmann::ordered_json j;
  j["schema_version"] = OutputRecord::kSchemaVersion;
  j["command"] = rec.command;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rec.inputs) j["inputs"][k] = v;
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rec.results) j["results"][k] = cell_json(v);
  j["columns"] = rec.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rec.rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : r) arr.push_back(cell_json(c));
    j["rows"].push_back(std::move(arr));
  }
  os << j.dump(2) << '\n';
}

std::vector<std::vector<Cell>> parse_csv_rows(std::istream& is) {
  std::vector<std::vector<Cell>> out;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<Cell> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      char* end = nullptr;
      const double d = std::strtod(field.c_str(), &end);
      if (!field.empty() && end == field.c_str() + field.size()) {
        row.emplace_back(d);
      } else {
        row.emplace_back(field);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace raz
