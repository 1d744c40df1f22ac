#include "report.hpp"

#include <cstdio>

#include "json.hpp"
#include "rarewalk/version.hpp"

namespace rarewalk::cli {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string format_rational(const Rational& value) {
  return to_fraction_string(value);
}

std::string format_int(std::int64_t value) { return std::to_string(value); }
std::string format_uint(std::uint64_t value) { return std::to_string(value); }
std::string format_bool(bool value) { return value ? "true" : "false"; }

void emit_csv(const Report& report, std::ostream& out) {
  out << "# subcommand=" << report.subcommand << "\n";
  out << "# engine_version=" << kVersion << "\n";
  for (const auto& [key, value] : report.meta)
    out << "# " << key << "=" << value << "\n";
  for (std::size_t c = 0; c < report.columns.size(); ++c)
    out << (c ? "," : "") << report.columns[c];
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << row[c];
    out << "\n";
  }
}

void emit_json(const Report& report, std::ostream& out) {
  nlohmann::json doc;
  doc["subcommand"] = report.subcommand;
  doc["engine_version"] = kVersion;
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [key, value] : report.meta) meta[key] = value;
  doc["meta"] = meta;
  doc["columns"] = report.columns;
  nlohmann::json data = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size() && c < report.columns.size(); ++c)
      obj[report.columns[c]] = row[c];
    data.push_back(obj);
  }
  doc["data"] = data;
  out << doc.dump(2) << "\n";
}

}  // namespace rarewalk::cli
