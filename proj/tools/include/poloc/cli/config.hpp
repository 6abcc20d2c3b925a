// Run configuration: one JSON file plus command-line overrides.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace poloc::cli {

using json = nlohmann::json;

// usage and configuration problems; mapped to exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Budgets {
  int quadrature_order = 128;
  std::uint64_t qmc_points = 1u << 20;
  int randomizations = 16;
  int pd_sets = 200;
  int pd_points = 30;
  std::uint64_t pairs = 100000;
  int timelike_seeds = 200;
  double resolution = 1.0;
};

struct Tolerances {
  double pd = 1e-10;
  double violation = 1e-6;
  double nc_equality = 1e-10;
  double inversion = 1e-6;
  double round_trip = 1e-5;
  double maximality = 1e-12;
  double conserved = 1e-12;
  double timelike = 1e-10;
  double ct_error = 1e-3;
  double identity = 1e-12;
  double fourier = 1e-8;
};

struct RunConfig {
  std::string command = "suite";
  json kernel;  // optional spec fragment
  Budgets budgets;
  Tolerances tolerances;
  std::string output_dir = "poloc-out";
  std::uint64_t seed = 1;
  bool parallel = false;

  void validate() const;
  json to_json() const;
  static RunConfig from_json(const json& j);
  static RunConfig load(const std::filesystem::path& path);
};

// FNV-1a over the canonical JSON dump
std::uint64_t fnv1a(const std::string& bytes);
std::string config_hash(const RunConfig& c);

// POLOC_OUTPUT_DIR, when set, replaces the configured directory
std::filesystem::path output_dir(const RunConfig& c);

}  // namespace poloc::cli
