// Run records, appended one JSON object per line.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "poloc/cli/config.hpp"

namespace poloc::cli {

struct Assertion {
  std::string name;
  bool pass = false;
  double value = 0;
  double tol = 0;  // bound the value was compared against
  std::string relation;  // ">=", "<=", "<", ...
};

struct RunRecord {
  std::string suite;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string timestamp;
  std::string version;
  json results = json::object();
  std::vector<Assertion> assertions;
  json timings = json::object();  // seconds per section

  bool pass() const;
  // results and assertions only; equal for equal config and seed
  json payload() const;
  json to_json() const;
};

// checks and records; returns the verdict
bool check(RunRecord& r, std::string name, double value, std::string relation, double bound);

void append(const std::filesystem::path& log, const RunRecord& r);
std::string utc_timestamp();

}  // namespace poloc::cli
