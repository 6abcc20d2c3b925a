// Special functions, kinematics on the mass shell, and Gauss rules.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace poloc {

using Vec3 = Eigen::Vector3d;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// epsilon(p) = sqrt(m^2 + |p|^2)
struct Energy {
  double mass = 1.0;
  double operator()(double p) const { return std::hypot(mass, p); }
  double operator()(const Vec3& p) const { return std::sqrt(mass * mass + p.squaredNorm()); }
};

inline double energy(double p, double m = 1.0) { return std::hypot(m, p); }
inline double energy(const Vec3& p, double m = 1.0) { return std::sqrt(m * m + p.squaredNorm()); }

// cosh^{-1} in the form ln(t + sqrt(t^2 - 1)), computed through t - 1.
double rapidity(double t);
double rapidity_from_excess(double e);  // e = t - 1 >= 0

// h_1(rho) = rho / (1 + eps(rho)), the variable of the coefficient expansions.
inline double h1(double rho, double m = 1.0) { return rho / (m + energy(rho, m)); }
// l(rho) = ln(eps(rho) + rho)
inline double ell(double rho) { return std::asinh(rho); }

// Minkowski product of the on-shell four-vectors, minus m^2. Free of
// cancellation for collinear and large momenta.
double minkowski_excess(const Vec3& k, const Vec3& p, double m = 1.0);
inline double minkowski(const Vec3& k, const Vec3& p, double m = 1.0) {
  return m * m + minkowski_excess(k, p, m);
}
// 1-D version: eps(k)eps(p) - kp - m^2
double minkowski_excess_1d(double k, double p, double m = 1.0);

// sin(x)/x and sinh(x)/x with the removable point handled
double sinc(double x);
double sinhc(double x);

double legendre_p(int j, double x);
// P_0..P_J at x, written into out (resized)
void legendre_all(int J, double x, std::vector<double>& out);
double gegenbauer_c(int n, double r, double x);

// Spherical Bessel j_l and its derivative. Closed forms for l <= 2.
double sph_j(int l, double x);
double sph_j_prime(int l, double x);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// Nodes and weights on [-1,1]. Cached and shared; safe to call concurrently.
std::shared_ptr<const GaussRule> gauss_legendre(int order);
GaussRule gauss_legendre_nodes(int order);

// Composite rule: `panels` equal panels on [a,b], `order` points each.
GaussRule composite_gauss(double a, double b, int panels, int order = 8);
// Panels of width at most `width`.
GaussRule panel_gauss(double a, double b, double width, int order = 8);
// Concatenate rules
GaussRule join(const GaussRule& a, const GaussRule& b);

// Adaptive Gauss-Kronrod on [a,b]; throws DomainError when the error
// estimate misses abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12, double* error = nullptr);
// Semi-infinite [a, inf) via exp-sinh.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-12, double* error = nullptr);

}  // namespace poloc
