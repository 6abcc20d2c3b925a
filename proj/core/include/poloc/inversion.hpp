// Principal-series weight functions: g -> psi -> w(lambda) and back.
#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poloc/kernels.hpp"
#include "poloc/pd.hpp"

namespace poloc {

struct WeightFunction {
  std::string source;
  std::vector<double> lambda;  // uniform
  std::vector<double> w;
  double normalization = 0;  // trapezoid integral over [0, lambda_max]
  double truncation = 0;     // X used for the psi integral
  double max_imag = 0;       // largest sampled imaginary part of the transform

  double step() const { return lambda.size() > 1 ? lambda[1] - lambda[0] : 0.0; }
  // cubic interpolation on the grid, zero outside
  double operator()(double l) const;
  static WeightFunction tabulate(const std::function<double(double)>& w, double lambda_max = 12.0,
                                 int points = 4096, std::string source = "tabulated");
};

struct InversionOptions {
  double lambda_max = 12.0;
  int points = 4096;
  double X0 = 40.0;        // first truncation tried
  double X_max = 400.0;
  double psi_tail = 1e-13;  // |psi(X)| must fall below this
  double negativity_tol = 1e-8;
  double normalization_tol = 1e-6;
};

// |g(t)| <= kappa / sinh kappa on a rapidity grid up to kappa_max
bool in_principal_class(const RadialProfile& g, double kappa_max = 30.0, int points = 600);

// psi(x) = d/dx (sinh x g(cosh x)); analytic derivative when the profile has
// one, otherwise Richardson-extrapolated central differences.
std::function<double(double)> psi_of(const RadialProfile& g);

WeightFunction invert(const RadialProfile& g, const InversionOptions& opt = {});

// g(t) = int_0^inf sin(lambda kappa) / (lambda sinh kappa) w(lambda) dlambda by the trapezoid rule
std::vector<double> forward(const WeightFunction& w, std::span<const double> t_grid);

// Gram test of (x, y) -> psi(x - y)
GramReport psi_positive_type_check(const RadialProfile& g, std::span<const double> xs);
GramReport positive_type_check(const std::function<double(double)>& psi, std::span<const double> xs);

void write_weight_csv(std::ostream& os, const WeightFunction& w);
json to_json(const WeightFunction& w, bool with_values = false);

}  // namespace poloc
