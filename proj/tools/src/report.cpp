#include "poloc/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "poloc/cli/config.hpp"

namespace poloc::cli {

namespace {

double slack(const json& a) {
  const double v = a.at("value").get<double>(), b = a.at("bound").get<double>();
  const std::string rel = a.at("relation").get<std::string>();
  return (rel == ">=" || rel == ">") ? v - b : b - v;
}

}  // namespace

Report summarize(const std::filesystem::path& log) {
  std::ifstream in(log);
  if (!in) throw ConfigError("report: cannot open " + log.string());
  Report rep;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const json& p = j.at("payload");
      ReportRow row;
      row.suite = p.at("suite").get<std::string>();
      row.config_hash = p.at("config_hash").get<std::string>();
      row.pass = p.at("pass").get<bool>();
      row.worst_slack = INFINITY;
      for (const auto& a : p.at("assertions")) {
        ++row.assertions;
        if (!a.at("pass").get<bool>()) ++row.failures;
        const double s = slack(a);
        if (s < row.worst_slack) {
          row.worst_slack = s;
          row.worst_name = a.at("name").get<std::string>();
        }
      }
      if (j.contains("timings") && j["timings"].contains("total")) row.seconds = j["timings"]["total"].get<double>();
      rep.rows.push_back(row);
    } catch (const json::exception&) {
      ++rep.skipped_lines;
    }
  }
  if (rep.rows.empty()) throw ConfigError("report: no readable records in " + log.string());
  std::stable_partition(rep.rows.begin(), rep.rows.end(), [](const ReportRow& r) { return !r.pass; });
  return rep;
}

void write_csv(std::ostream& os, const Report& r) {
  os << "suite,status,assertions,failures,worst_assertion,worst_slack,seconds,config_hash\n";
  os << std::setprecision(6);
  for (const auto& row : r.rows)
    os << row.suite << ',' << (row.pass ? "PASS" : "FAIL") << ',' << row.assertions << ',' << row.failures << ",\""
       << row.worst_name << "\"," << row.worst_slack << ',' << row.seconds << ',' << row.config_hash << '\n';
}

void write_text(std::ostream& os, const Report& r) {
  os << std::left << std::setw(12) << "suite" << std::setw(8) << "status" << std::setw(8) << "checks" << std::setw(8)
     << "fails" << std::setw(12) << "worst" << std::setw(10) << "seconds" << "assertion\n";
  for (const auto& row : r.rows)
    os << std::setw(12) << row.suite << std::setw(8) << (row.pass ? "PASS" : "FAIL") << std::setw(8) << row.assertions
       << std::setw(8) << row.failures << std::setw(12) << std::setprecision(3) << row.worst_slack << std::setw(10)
       << std::setprecision(3) << row.seconds << row.worst_name << '\n';
  if (r.skipped_lines > 0) os << "warning: skipped " << r.skipped_lines << " unreadable line(s)\n";
}

}  // namespace poloc::cli
