#include "poloc/cli/run_log.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

namespace poloc::cli {

bool RunRecord::pass() const {
  for (const auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

json RunRecord::payload() const {
  json as = json::array();
  for (const auto& a : assertions)
    as.push_back(json{{"name", a.name}, {"pass", a.pass}, {"value", a.value}, {"relation", a.relation}, {"bound", a.tol}});
  return json{{"suite", suite}, {"config_hash", config_hash}, {"seed", seed}, {"results", results}, {"assertions", as},
              {"pass", pass()}};
}

json RunRecord::to_json() const {
  return json{{"timestamp", timestamp}, {"version", version}, {"timings", timings}, {"payload", payload()}};
}

bool check(RunRecord& r, std::string name, double value, std::string relation, double bound) {
  bool ok = false;
  if (relation == ">=") ok = value >= bound;
  else if (relation == ">") ok = value > bound;
  else if (relation == "<=") ok = value <= bound;
  else if (relation == "<") ok = value < bound;
  ok = ok && !std::isnan(value);
  // JSON has no infinities
  const double v = std::isfinite(value) ? value : (value > 0 ? 1e308 : -1e308);
  r.assertions.push_back({std::move(name), ok, v, bound, std::move(relation)});
  return ok;
}

void append(const std::filesystem::path& log, const RunRecord& r) {
  if (log.has_parent_path()) std::filesystem::create_directories(log.parent_path());
  std::ofstream out(log, std::ios::app);
  if (!out) throw ConfigError("run log: cannot open " + log.string());
  out << r.to_json().dump() << '\n';
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace poloc::cli
