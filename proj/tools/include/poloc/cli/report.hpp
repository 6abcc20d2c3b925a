// Summary tables over a JSON-lines run log.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace poloc::cli {

struct ReportRow {
  std::string suite;
  std::string config_hash;
  bool pass = false;
  int assertions = 0, failures = 0;
  std::string worst_name;
  double worst_slack = 0;  // smallest distance to the bound, negative when failing
  double seconds = 0;
};

struct Report {
  std::vector<ReportRow> rows;  // failures first, then log order
  int skipped_lines = 0;
};

// throws ConfigError when the log is missing or holds no readable record
Report summarize(const std::filesystem::path& log);
void write_csv(std::ostream& os, const Report& r);
void write_text(std::ostream& os, const Report& r);

}  // namespace poloc::cli
