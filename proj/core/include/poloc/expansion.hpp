// Legendre coefficient kernels k_j(sigma, rho) of rotation-invariant kernels.
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poloc/kernels.hpp"

namespace poloc {

class LegendreCoefficients {
 public:
  LegendreCoefficients(Kernel source, int J, int quadrature_order);

  int max_order() const { return J_; }
  int quadrature_order() const { return order_; }
  const std::string& source_id() const { return source_.label(); }
  const Kernel& source() const { return source_; }

  // k_j(sigma, rho) by Gauss-Legendre in the cosine
  double operator()(int j, double sigma, double rho) const;
  // k_0 .. k_J at once
  std::vector<double> all(double sigma, double rho) const;

  // tabulated values on the grid given at extraction (may be empty)
  const std::vector<double>& grid() const { return grid_; }
  double tabulated(int j, std::size_t i_sigma, std::size_t i_rho) const;
  void tabulate(std::span<const double> grid);

 private:
  Kernel source_;
  int J_;
  int order_;
  std::vector<double> grid_;
  std::vector<double> table_;
};

// Rotation-invariance is spot-checked on the grid (residual > 1e-8 throws).
// quadrature_order <= 0 selects 2J + 16.
LegendreCoefficients extract_coefficients(const Kernel& K, int J, std::span<const double> grid = {},
                                          int quadrature_order = 0);

// Smallest J (doubling from 8, capped at max_J) with tail_bound < tol at every radius.
LegendreCoefficients extract_adaptive(const Kernel& K, std::span<const double> radii, double tol = 1e-6,
                                      int max_J = 128);

double reconstruct(const LegendreCoefficients& c, double sigma, double rho, double x);
// |reconstruct - K| at the given point
double reconstruction_error(const LegendreCoefficients& c, double sigma, double rho, double x);
// 1 - sum_{j<=J} k_j(rho, rho)
double tail_bound(const LegendreCoefficients& c, double rho);

// Largest rotation-invariance residual over random rotations of zonal pairs.
double rotation_residual(const Kernel& K, std::span<const double> grid, int rotations = 8, std::uint64_t seed = 1);

Kernel kernel_from_coefficients(const LegendreCoefficients& c);

// CSV with columns j, sigma, rho, k_j over grid x grid
void write_coefficients_csv(std::ostream& os, const LegendreCoefficients& c, std::span<const double> grid);

// Closed form of the coefficients of the g_{1/2} Lorentz kernel.
double g_half_coefficient(int j, double sigma, double rho, double m = 1.0);

}  // namespace poloc
