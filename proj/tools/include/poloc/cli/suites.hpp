// Named suites of assertions driven by a RunConfig.
#pragma once

#include <string>
#include <vector>

#include "poloc/cli/config.hpp"
#include "poloc/cli/run_log.hpp"

namespace poloc::cli {

// pd, nc, invert, maximality, ct, plss, onedim, in the order "all" runs them
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

RunRecord run_suite(const std::string& name, const RunConfig& config);
// "all" expands to every suite
std::vector<RunRecord> run_suites(const std::string& name, const RunConfig& config);

}  // namespace poloc::cli
