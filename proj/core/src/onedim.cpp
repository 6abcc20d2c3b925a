#include "poloc/onedim.hpp"

#include <cmath>
#include <numbers>

#include "poloc/kinematics.hpp"

namespace poloc {

namespace {
constexpr double kPi = std::numbers::pi;
double eps1(double k) { return std::sqrt(1.0 + k * k); }
}  // namespace

Kernel1D::Kernel1D(RadialProfile g) : g_(std::move(g)) {
  if (std::abs(g_.mass() - 1.0) > 0) g_ = g_.with_mass(1.0);
  if (std::abs(g_(1.0) - 1.0) > 1e-12) throw DomainError("kernel_1d: profile must satisfy g(1) = 1");
}

double Kernel1D::operator()(double k, double p) const {
  const double e = eps1(k), f = eps1(p);
  double u = minkowski_excess_1d(k, p, 1.0);
  return (e + f) / (2.0 * std::sqrt(e * f)) * g_.at_excess(u);
}

double Kernel1D::at_rapidity(double x, double y) const {
  // cosh(x-y) - 1 = 2 sinh^2((x-y)/2), exact for nearby rapidities
  const double s = std::sinh(0.5 * (x - y));
  const double pref = std::cosh(0.5 * (x + y)) * std::cosh(0.5 * (x - y)) / std::sqrt(std::cosh(x) * std::cosh(y));
  return pref * g_.at_excess(2.0 * s * s);
}

Kernel1D kernel_1d(const RadialProfile& g) { return Kernel1D(g); }

double h_kernel(double x, double y) {
  return std::cosh(0.5 * x) / std::sqrt(std::cosh(x)) * std::cosh(0.5 * y) / std::sqrt(std::cosh(y)) *
         (1.0 + std::tanh(0.5 * x) * std::tanh(0.5 * y));
}

double energy_factor_1d(double k, double p) {
  const double e = eps1(k), f = eps1(p);
  return 2.0 * std::sqrt(e * f) / (e + f);
}

IdentityReport amkk_identities(const RadialProfile& g, int samples, std::uint64_t seed) {
  const Kernel1D K(g);
  const RadialProfile half = power_profile(0.5);
  Rng rng(seed);
  IdentityReport r;
  r.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const double x = uniform(rng, -6.0, 6.0), y = uniform(rng, -6.0, 6.0);
    const double k = std::sinh(x), p = std::sinh(y);
    const double e = eps1(k), f = eps1(p);
    const double u = minkowski_excess_1d(k, p, 1.0);
    const double pref = (e + f) / (2.0 * std::sqrt(e * f));
    const double alt = std::sqrt((1.0 + e * f + k * p) / (2.0 * e * f)) / half.at_excess(u);
    r.prefactor_residual = std::max(r.prefactor_residual, std::abs(pref - alt) / std::abs(pref));
    const double lhs = K(k, p);
    const double rhs = h_kernel(x, y) * g.at_excess(u) / half.at_excess(u);
    r.factor_residual = std::max(r.factor_residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return r;
}

double h_shift_sup(double c, double x_max) {
  double best = -1;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) best = std::max(best, h_kernel(x_max * i / n, x_max * i / n + c));
  return best;
}

FactorizationReport factorization_check(const RadialProfile& g, std::span<const double> xs) {
  FactorizationReport r;
  const RadialProfile g1 = g.with_mass(1.0);
  r.stationary = gram_test(
      [&](double x, double y) {
        const double s = std::sinh(0.5 * (x - y));
        return g1.at_excess(2.0 * s * s);
      },
      xs);
  r.stationary.label = "stationary " + g.label();
  const Kernel1D K(g1);
  r.full = gram_test([&](double x, double y) { return K.at_rapidity(x, y); }, xs);
  r.full.label = "K1 " + g.label();
  const Kernel1D prod(profile_product(power_profile(0.5), g1));
  const Kernel1D half(power_profile(0.5));
  r.bound_margin = INFINITY;
  for (double x : xs)
    for (double y : xs) r.bound_margin = std::min(r.bound_margin, half.at_rapidity(x, y) - std::abs(prod.at_rapidity(x, y)));
  return r;
}

double gaussian_f(double x, double s) { return std::exp(-x * x / (2.0 * s * s)) * std::cosh(0.5 * x); }

double gaussian_fhat(double y, double s) {
  const double s2 = s * s;
  return s * std::exp(s2 / 8.0) * std::cos(0.5 * s2 * y) * std::exp(-0.5 * s2 * y * y);
}

double gaussian_fhat_numeric(double y, double s) {
  // even integrand: 2 int_0^X f(x) cos(xy) dx / sqrt(2 pi), X where f < 1e-18
  const double X = s * s / 2.0 + s * std::sqrt(s * s / 4.0 + 2.0 * 42.0);
  double v = 0;
  const int panels = static_cast<int>(std::ceil(X / 2.0));
  for (int i = 0; i < panels; ++i) {
    const double a = X * i / panels, b = X * (i + 1) / panels;
    v += integrate([&](double x) { return gaussian_f(x, s) * std::cos(x * y); }, a, b, 1e-15, 1e-13);
  }
  return 2.0 * v / std::sqrt(2.0 * kPi);
}

GaussianCounterexample gaussian_counterexample(double s, double y_probe) {
  if (!(s > 0) || s > 2.0) throw DomainError("gaussian_counterexample: width must lie in (0, 2]");
  GaussianCounterexample r;
  r.varsigma = s;
  const int n = 100000;
  r.grid_max = -INFINITY;
  // sign of f' is the sign of tanh(x/2)/2 - x/s^2
  int last = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = -20.0 + 40.0 * i / n;
    const double f = gaussian_f(x, s);
    if (f > r.grid_max) {
      r.grid_max = f;
      r.argmax = x;
    }
    const double d = 0.5 * std::tanh(0.5 * x) - x / (s * s);
    const int sg = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (sg != 0) {
      if (last != 0 && sg != last) ++r.derivative_sign_changes;
      last = sg;
    }
  }
  r.y_probe = y_probe;
  r.fhat_closed = gaussian_fhat(y_probe, s);
  r.fhat_numeric = gaussian_fhat_numeric(y_probe, s);
  r.fhat_min = INFINITY;
  for (int i = 0; i <= 4000; ++i) r.fhat_min = std::min(r.fhat_min, gaussian_fhat(10.0 * i / 4000, s));
  r.positive_type = !(r.fhat_min < 0);
  return r;
}

GramReport shifted_violation_search(const RadialProfile& g, double x0, int n, double step) {
  const Kernel1D K(g);
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(x0 + step * (i - 0.5 * (n - 1)));
  GramReport r = gram_test([&](double x, double y) { return K.at_rapidity(x, y); }, xs);
  r.label = "K1 " + g.label() + " shifted";
  r.source = "ladder";
  return r;
}

std::vector<DivisibilityRow> infinite_divisibility_check(std::span<const double> xs) {
  std::vector<DivisibilityRow> out;
  for (double x : xs) {
    DivisibilityRow row;
    row.x = x;
    // log(1/cosh(x/2)) = -x/2 - log((1 + e^{-x})/2)
    const double ax = std::abs(x);
    row.lhs = -0.5 * ax - std::log1p(std::exp(-ax)) + std::log(2.0);
    auto f = [x](double y) {
      if (y == 0.0) return 0.0;
      const double s = std::sin(0.5 * x * y);
      return -2.0 * s * s / (y * std::sinh(kPi * y));
    };
    double v = 0, err_total = 0;
    const double top = 14.0;  // e^{-pi 14} is below 1e-19
    const int panels = 28 + static_cast<int>(std::ceil(ax * top / kPi));
    for (int i = 0; i < panels; ++i) {
      double err = 0;
      v += integrate(f, top * i / panels, top * (i + 1) / panels, 1e-14, 1e-12, &err);
      err_total += err;
    }
    row.rhs = v;
    row.error = err_total;
    out.push_back(row);
  }
  return out;
}

json to_json(const IdentityReport& r) {
  return json{{"samples", r.samples}, {"prefactor_residual", r.prefactor_residual}, {"factor_residual", r.factor_residual}};
}

json to_json(const GaussianCounterexample& r) {
  return json{{"varsigma", r.varsigma},
              {"grid_max", r.grid_max},
              {"argmax", r.argmax},
              {"derivative_sign_changes", r.derivative_sign_changes},
              {"y_probe", r.y_probe},
              {"fhat_closed", r.fhat_closed},
              {"fhat_numeric", r.fhat_numeric},
              {"fhat_min", r.fhat_min},
              {"positive_type", r.positive_type}};
}

json to_json(const DivisibilityRow& r) {
  return json{{"x", r.x}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"error", r.error}};
}

}  // namespace poloc
