#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rarewalk/rational.hpp"

namespace rarewalk::cli {

/// A tabular report: ordered metadata plus a fixed-width data table, rendered
/// as CSV ('#'-prefixed metadata lines) or as a {"meta", "columns", "data"}
/// JSON document. Data rows carry preformatted strings so the bytes emitted
/// do not depend on the worker count.
struct Report {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_meta(std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
  }
};

std::string format_double(double value);  // 17 significant digits
std::string format_rational(const Rational& value);
std::string format_int(std::int64_t value);
std::string format_uint(std::uint64_t value);
std::string format_bool(bool value);

void emit_csv(const Report& report, std::ostream& out);
void emit_json(const Report& report, std::ostream& out);

}  // namespace rarewalk::cli
