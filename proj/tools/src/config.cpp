#include "poloc/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace poloc::cli {

void RunConfig::validate() const {
  const auto& b = budgets;
  if (b.quadrature_order <= 0 || b.qmc_points == 0 || b.randomizations < 2 || b.pd_sets <= 0 || b.pd_points <= 1 ||
      b.pairs == 0 || b.timelike_seeds <= 0 || !(b.resolution > 0))
    throw ConfigError("config: every budget must be positive (randomizations at least 2)");
  const auto& t = tolerances;
  for (double v : {t.pd, t.violation, t.nc_equality, t.inversion, t.round_trip, t.maximality, t.conserved, t.timelike,
                   t.ct_error, t.identity, t.fourier})
    if (!(v > 0)) throw ConfigError("config: tolerances must be positive");
  if (output_dir.empty()) throw ConfigError("config: empty output directory");
}

json RunConfig::to_json() const {
  return json{{"command", command},
              {"kernel", kernel},
              {"seed", seed},
              {"parallel", parallel},
              {"output_dir", output_dir},
              {"budgets",
               {{"quadrature_order", budgets.quadrature_order},
                {"qmc_points", budgets.qmc_points},
                {"randomizations", budgets.randomizations},
                {"pd_sets", budgets.pd_sets},
                {"pd_points", budgets.pd_points},
                {"pairs", budgets.pairs},
                {"timelike_seeds", budgets.timelike_seeds},
                {"resolution", budgets.resolution}}},
              {"tolerances",
               {{"pd", tolerances.pd},
                {"violation", tolerances.violation},
                {"nc_equality", tolerances.nc_equality},
                {"inversion", tolerances.inversion},
                {"round_trip", tolerances.round_trip},
                {"maximality", tolerances.maximality},
                {"conserved", tolerances.conserved},
                {"timelike", tolerances.timelike},
                {"ct_error", tolerances.ct_error},
                {"identity", tolerances.identity},
                {"fourier", tolerances.fourier}}}};
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    for (const auto& [key, _] : j.items())
      if (key != "command" && key != "kernel" && key != "seed" && key != "parallel" && key != "output_dir" &&
          key != "budgets" && key != "tolerances")
        throw ConfigError("config: unknown key '" + key + "'");
    c.command = j.value("command", c.command);
    if (j.contains("kernel")) c.kernel = j.at("kernel");
    c.seed = j.value("seed", c.seed);
    c.parallel = j.value("parallel", c.parallel);
    c.output_dir = j.value("output_dir", c.output_dir);
    if (j.contains("budgets")) {
      const json& b = j.at("budgets");
      c.budgets.quadrature_order = b.value("quadrature_order", c.budgets.quadrature_order);
      c.budgets.qmc_points = b.value("qmc_points", c.budgets.qmc_points);
      c.budgets.randomizations = b.value("randomizations", c.budgets.randomizations);
      c.budgets.pd_sets = b.value("pd_sets", c.budgets.pd_sets);
      c.budgets.pd_points = b.value("pd_points", c.budgets.pd_points);
      c.budgets.pairs = b.value("pairs", c.budgets.pairs);
      c.budgets.timelike_seeds = b.value("timelike_seeds", c.budgets.timelike_seeds);
      c.budgets.resolution = b.value("resolution", c.budgets.resolution);
    }
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      auto& o = c.tolerances;
      o.pd = t.value("pd", o.pd);
      o.violation = t.value("violation", o.violation);
      o.nc_equality = t.value("nc_equality", o.nc_equality);
      o.inversion = t.value("inversion", o.inversion);
      o.round_trip = t.value("round_trip", o.round_trip);
      o.maximality = t.value("maximality", o.maximality);
      o.conserved = t.value("conserved", o.conserved);
      o.timelike = t.value("timelike", o.timelike);
      o.ct_error = t.value("ct_error", o.ct_error);
      o.identity = t.value("identity", o.identity);
      o.fourier = t.value("fourier", o.fourier);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  json j = c.to_json();
  j.erase("output_dir");
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(j.dump());
  return os.str();
}

std::filesystem::path output_dir(const RunConfig& c) {
  if (const char* env = std::getenv("POLOC_OUTPUT_DIR"); env && *env) return env;
  return c.output_dir;
}

}  // namespace poloc::cli
