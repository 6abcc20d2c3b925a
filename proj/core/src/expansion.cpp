#include "poloc/expansion.hpp"

#include <cmath>
#include <ostream>

#include "poloc/kinematics.hpp"

namespace poloc {

LegendreCoefficients::LegendreCoefficients(Kernel source, int J, int quadrature_order)
    : source_(std::move(source)), J_(J), order_(quadrature_order) {
  if (J < 0) throw DomainError("extract_coefficients: J must be nonnegative");
  if (order_ < 2 * J || order_ < 2) throw DomainError("extract_coefficients: quadrature order below 2J");
}

std::vector<double> LegendreCoefficients::all(double sigma, double rho) const {
  const auto rule = gauss_legendre(order_);
  std::vector<double> out(static_cast<std::size_t>(J_) + 1, 0.0);
  std::vector<double> P;
  for (std::size_t q = 0; q < rule->size(); ++q) {
    const double x = rule->nodes[q];
    const double f = rule->weights[q] * source_.radial(sigma, rho, x);
    legendre_all(J_, x, P);
    for (int j = 0; j <= J_; ++j) out[j] += f * P[j];
  }
  for (int j = 0; j <= J_; ++j) out[j] *= (j + 0.5);
  return out;
}

double LegendreCoefficients::operator()(int j, double sigma, double rho) const {
  if (j < 0 || j > J_) throw DomainError("coefficient index out of range");
  const auto rule = gauss_legendre(order_);
  double s = 0;
  for (std::size_t q = 0; q < rule->size(); ++q)
    s += rule->weights[q] * source_.radial(sigma, rho, rule->nodes[q]) * legendre_p(j, rule->nodes[q]);
  return (j + 0.5) * s;
}

void LegendreCoefficients::tabulate(std::span<const double> grid) {
  grid_.assign(grid.begin(), grid.end());
  const std::size_t n = grid_.size();
  table_.assign(n * n * (J_ + 1), 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto v = all(grid_[a], grid_[b]);
      std::copy(v.begin(), v.end(), table_.begin() + (a * n + b) * (J_ + 1));
    }
}

double LegendreCoefficients::tabulated(int j, std::size_t a, std::size_t b) const {
  const std::size_t n = grid_.size();
  if (a >= n || b >= n || j < 0 || j > J_) throw DomainError("tabulated coefficient out of range");
  return table_[(a * n + b) * (J_ + 1) + j];
}

double rotation_residual(const Kernel& K, std::span<const double> grid, int rotations, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0;
  const double xs[] = {-0.9, -0.3, 0.2, 0.8};
  for (int r = 0; r < rotations; ++r) {
    const Eigen::Matrix3d R = random_rotation(rng);
    for (double s : grid)
      for (double p : grid)
        for (double x : xs) {
          const Vec3 k(0, 0, s), q(0, p * std::sqrt(1 - x * x), p * x);
          worst = std::max(worst, std::abs(K(R * k, R * q) - K(k, q)));
        }
  }
  return worst;
}

LegendreCoefficients extract_coefficients(const Kernel& K, int J, std::span<const double> grid, int quadrature_order) {
  const int order = std::max(quadrature_order, 2 * J + 16);
  if (K.symmetry() == SymmetryClass::one_dimensional)
    throw DomainError("extract_coefficients: kernel is one-dimensional");
  static const double default_grid[] = {0.5, 1.0, 2.0};
  const std::span<const double> check = grid.empty() ? std::span<const double>(default_grid) : grid.first(std::min<std::size_t>(grid.size(), 4));
  const double res = rotation_residual(K, check, 2);
  if (res > 1e-8) throw DomainError("extract_coefficients: kernel not rotation invariant (residual " + std::to_string(res) + ")");
  LegendreCoefficients c(K, J, order);
  if (!grid.empty()) c.tabulate(grid);
  return c;
}

double tail_bound(const LegendreCoefficients& c, double rho) {
  const auto v = c.all(rho, rho);
  double s = 0;
  for (double x : v) s += x;
  return 1.0 - s;
}

LegendreCoefficients extract_adaptive(const Kernel& K, std::span<const double> radii, double tol, int max_J) {
  int J = 8;
  for (;;) {
    LegendreCoefficients c = extract_coefficients(K, J);
    bool ok = true;
    for (double r : radii)
      if (std::abs(tail_bound(c, r)) >= tol) {
        ok = false;
        break;
      }
    if (ok || J >= max_J) return c;
    J = std::min(2 * J, max_J);
  }
}

double reconstruct(const LegendreCoefficients& c, double sigma, double rho, double x) {
  if (std::abs(x) > 1.0 + 1e-12) throw DomainError("reconstruct: |x| > 1");
  const auto v = c.all(sigma, rho);
  std::vector<double> P;
  legendre_all(c.max_order(), std::clamp(x, -1.0, 1.0), P);
  double s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * P[j];
  return s;
}

double reconstruction_error(const LegendreCoefficients& c, double sigma, double rho, double x) {
  return std::abs(reconstruct(c, sigma, rho, x) - c.source().radial(sigma, rho, x));
}

Kernel kernel_from_coefficients(const LegendreCoefficients& c) {
  std::vector<CoefficientFn> fs;
  for (int j = 0; j <= c.max_order(); ++j) fs.push_back([c, j](double s, double r) { return c(j, s, r); });
  return kernel_from_coefficients(std::move(fs), c.max_order());
}

void write_coefficients_csv(std::ostream& os, const LegendreCoefficients& c, std::span<const double> grid) {
  os << "j,sigma,rho,k_j\n";
  os.precision(17);
  for (double s : grid)
    for (double r : grid) {
      const auto v = c.all(s, r);
      for (std::size_t j = 0; j < v.size(); ++j) os << j << ',' << s << ',' << r << ',' << v[j] << '\n';
    }
}

double g_half_coefficient(int j, double sigma, double rho, double m) {
  auto f = [j, m](double r) {
    const double e = energy(r, m);
    return std::sqrt(2.0) * std::pow(r / m, j) * std::pow(1.0 + e / m, -(j + 0.5));
  };
  return f(sigma) * f(rho);
}

}  // namespace poloc
