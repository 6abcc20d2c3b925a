// Regenerates tests/golden/localization.json. Run once, by hand; the tests
// only read the file.
#include <fstream>
#include <iostream>

#include "poloc/poloc.hpp"

using namespace poloc;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "localization.json";
  json out;
  {
    ProbabilityOptions o;
    o.method = Method::quasi_monte_carlo;
    o.qmc_points = 10'000'000;
    o.qmc_randomizations = 16;
    o.seed = 20240611;
    const auto p = probability(kernel_terno_moretti(), gaussian_state(1.0), BallRegion(1.0), o);
    out["tm_gaussian_s1_R1"] = json{{"value", p.value}, {"standard_error", p.error}, {"samples", o.qmc_points},
                                    {"randomizations", o.qmc_randomizations}, {"seed", o.seed}};
  }
  // four times the default grid density
  ProbabilityOptions o;
  o.resolution = 4.0;
  const std::vector<double> ns{32};
  for (const auto& K : {kernel_terno_moretti(), kernel_tct()}) {
    const auto p = plss_sequence(K, Vec3(0, 0, 1), Vec3::Zero(), BallRegion(2.0), ns, o).front();
    const double threshold = p.value - 1e-8;
    out["plss_n32_R2_" + K.label()] = json{{"value", p.value}, {"error", p.error}, {"resolution", o.resolution},
                                           {"threshold", threshold}};
  }
  std::ofstream f(path);
  f << out.dump(2) << '\n';
  std::cout << out.dump(2) << '\n';
}
