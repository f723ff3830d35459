#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common/exec.hpp"
#include "driver/report.hpp"

namespace fqp::driver {

enum class Status { Ok = 0, HardViolation = 1, Validation = 2, Budget = 3, Internal = 4 };

struct RunConfig {
  std::string command;  // count, verify, bounds, bertini-audit, valueset, catalog-list
  std::vector<std::string> fields;        // "p" or "p^k"; verify defaults to a grid
  std::optional<std::string> spec_path;
  std::optional<std::string> spec_text;   // inline document, takes precedence
  std::vector<std::string> catalog;       // entry names; empty means all
  std::uint64_t budget = kDefaultBudget;
  unsigned ext_level = 2;
  std::uint64_t seed = 1;
  unsigned seeds = 1;                     // bertini-audit: seed, seed+1, ...
  unsigned workers = 1;
  std::string out_dir;                    // empty: nothing written
  std::string format = "csv";
  // bounds without a spec document
  std::optional<unsigned> n, r;
  std::optional<int> s;
  std::vector<int> degrees;
  // valueset
  int d = 3;
  int vs_s = 1;
  std::optional<std::vector<std::uint32_t>> fixed;  // a_{d-1}, ..., a_{d-s}
  bool inject_fault = false;
};

struct RunResult {
  Status status = Status::Ok;
  std::string message;             // diagnostics for non-zero status
  std::vector<Table> tables;
  std::vector<std::string> files;  // written under out_dir
};

// Never throws: errors map onto the status.
RunResult run_command(const RunConfig& cfg);

// Run metadata that must stay out of the numeric reports (worker count).
std::string run_meta_json(const RunConfig& cfg);

const std::vector<std::string>& default_verify_fields();

}  // namespace fqp::driver
