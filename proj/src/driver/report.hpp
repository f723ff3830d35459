#pragma once

#include <string>
#include <vector>

namespace fqp::driver {

inline constexpr const char* kToolkitVersion = "0.1.0";

// A flat report: every cell is an exact string.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

std::string to_csv(const Table& t);
// {"report": name, "version": ..., "rows": [{column: cell, ...}, ...]}
std::string to_json(const Table& t);
std::string render(const Table& t, const std::string& format);

}  // namespace fqp::driver
