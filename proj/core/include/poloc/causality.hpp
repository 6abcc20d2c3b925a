// The necessary condition NC, maximality of K_{3/2}, and current criteria.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poloc/kernels.hpp"
#include "poloc/kinematics.hpp"

namespace poloc {

enum class NcMode { profile_only, with_prefactor };
std::string to_string(NcMode m);

struct NcReport {
  std::string label;
  NcMode mode = NcMode::with_prefactor;
  std::vector<double> rho, ls, rs, margin;  // margin = rs - ls
  double min_margin() const;
  double max_abs_margin() const;
};

// Profiles are read in units m = 1 (through the excess t/m^2 - 1).
NcReport nc_check(const RadialProfile& g, NcMode mode, std::span<const double> rho_grid);
double nc_right_side(const RadialProfile& g, double rho);
double nc_left_side(const RadialProfile& g, double rho, NcMode mode);

struct IrreducibleNcRow {
  double rho, rs_quadrature, rs_closed, ls_with_prefactor, prefactor;
};
struct IrreducibleNcReport {
  Series kind;
  double lambda;
  std::vector<IrreducibleNcRow> rows;
  double max_rs_error() const;
};
IrreducibleNcReport nc_irreducible_identity(Series kind, double lambda, std::span<const double> rho_grid);

using MomentumPair = std::pair<Vec3, Vec3>;
// half uniform in the ball |p| <= box, half log-radial with |p| in [1e-2, radial_max]
std::vector<MomentumPair> sample_pairs(std::uint64_t seed, std::size_t n, double box = 20.0,
                                       double radial_max = 1e3);

struct MaximalityReport {
  std::string label;
  std::size_t pairs = 0;
  double max_excess = 0;        // max |K| - K_{3/2}
  double min_strict_margin = 0; // min K_{3/2} - |K| over k != p
  std::size_t bound_failures = 0, strict_failures = 0;
  bool strict = false;
  bool ok() const { return bound_failures == 0 && (!strict || strict_failures == 0); }
};
MaximalityReport maximality_check(const Kernel& K, std::span<const MomentumPair> pairs, bool strict);

// max |(eps(k) - eps(p)) K - sum (k_i - p_i) j_i|
double conserved_check(const Kernel& K, std::span<const MomentumPair> pairs);
double conserved_check(const Kernel& K, const CurrentKernel& j, std::span<const MomentumPair> pairs);

struct TimelikeReport {
  double worst_margin = 0;
  std::uint64_t worst_seed = 0;
  std::size_t trials = 0;
};
// (sum c c K)^2 - sum_i (sum c c j_i)^2 with unit c, real and complex per seed
TimelikeReport timelike_definite_check(const Kernel& K, int n, std::span<const std::uint64_t> seeds,
                                       double box = 10.0);

// g(kp)(k + p)/2 on the mass shell
std::function<Vec4(const Vec3&, const Vec3&)> shell_current(const RadialProfile& g);
// momentum-normalized spatial components v_i / sqrt(eps(k) eps(p))
CurrentKernel covariant_current_decompose(const RadialProfile& g);

void write_nc_csv(std::ostream& os, const NcReport& r);
json to_json(const NcReport& r);
json to_json(const MaximalityReport& r);

}  // namespace poloc
