// One spatial dimension: kernels K^1, the factorization through K^1_{1/2},
// the Gaussian counterexample and the infinite divisibility of 1/cosh(x/2).
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "poloc/kernels.hpp"
#include "poloc/pd.hpp"

namespace poloc {

// K^1(k,p) = (eps(k)+eps(p))/(2 sqrt(eps(k)eps(p))) g(eps(k)eps(p) - kp), unit mass
class Kernel1D {
 public:
  explicit Kernel1D(RadialProfile g);
  double operator()(double k, double p) const;
  // in rapidities: K^1(sinh x, sinh y)
  double at_rapidity(double x, double y) const;
  const RadialProfile& profile() const { return g_; }

 private:
  RadialProfile g_;
};

Kernel1D kernel_1d(const RadialProfile& g);

// cosh(x/2)cosh(y/2)/sqrt(cosh x cosh y) (1 + tanh(x/2) tanh(y/2))
double h_kernel(double x, double y);
// 2 sqrt(eps(k)eps(p))/(eps(k)+eps(p))
double energy_factor_1d(double k, double p);

struct IdentityReport {
  int samples = 0;
  double prefactor_residual = 0;  // prefactor against ((1+ee'+kp)/(2ee'))^{1/2}/g_{1/2}
  double factor_residual = 0;     // K^1(sinh x, sinh y) against h (g/g_{1/2})(cosh(x-y))
};
// random pairs from seed; rapidities in [-6, 6]
IdentityReport amkk_identities(const RadialProfile& g, int samples, std::uint64_t seed);

// max over x in [0, x_max] of h(x, x + c) on a grid
double h_shift_sup(double c, double x_max = 40.0);

struct FactorizationReport {
  GramReport stationary;  // (x,y) -> g(cosh(x-y))
  GramReport full;        // K^1 at rapidities
  double bound_margin = 0;  // min over samples of K^1_{1/2} - |K^1|
};
// Gram tests on the rapidity samples; the bound margin uses K^1 for g g_{1/2}
FactorizationReport factorization_check(const RadialProfile& g, std::span<const double> rapidities);

struct GaussianCounterexample {
  double varsigma = 2.0;
  double grid_max = 0;          // max of f on [-20, 20]
  double argmax = 0;
  int derivative_sign_changes = 0;
  double y_probe = 0;
  double fhat_closed = 0;       // closed form at y_probe
  double fhat_numeric = 0;      // direct quadrature at y_probe
  double fhat_min = 0;          // most negative closed-form value on a y grid
  bool positive_type = true;    // false once a negative transform value is seen
};
// f(x) = exp(-x^2/(2 s^2)) cosh(x/2), fhat(y) = (2 pi)^{-1/2} int f(x) e^{-ixy} dx
double gaussian_f(double x, double varsigma);
double gaussian_fhat(double y, double varsigma);
double gaussian_fhat_numeric(double y, double varsigma);
GaussianCounterexample gaussian_counterexample(double varsigma, double y_probe = 1.5707963267948966);

// K^1 of the rapidity-Gaussian profile on equally spaced rapidities shifted to
// x0, where h is close to 1 and the Gram matrix approaches f(x_i - x_j)
GramReport shifted_violation_search(const RadialProfile& g, double x0 = 15.0, int n = 80, double step = 0.25);

struct DivisibilityRow {
  double x = 0, lhs = 0, rhs = 0, error = 0;
};
// log(1/cosh(x/2)) against int_0^inf (cos xy - 1)/(y sinh(pi y)) dy
std::vector<DivisibilityRow> infinite_divisibility_check(std::span<const double> xs);

json to_json(const IdentityReport& r);
json to_json(const GaussianCounterexample& r);
json to_json(const DivisibilityRow& r);

}  // namespace poloc
