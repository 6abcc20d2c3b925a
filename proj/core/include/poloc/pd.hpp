// Empirical positive-definiteness: Gram spectra, probes, violation search.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poloc/kernels.hpp"

namespace poloc {

enum class Verdict { pd_on_sample, violated };
std::string to_string(Verdict v);

struct GramReport {
  std::string label;
  std::string source = "gram";  // gram, ray, ladder, shell, coefficient
  std::uint64_t seed = 0;
  std::vector<Vec3> points;      // 3-D samples
  std::vector<double> scalars;   // radii or real-line samples
  Eigen::MatrixXd gram;
  Eigen::VectorXd spectrum;      // ascending
  double min_eigenvalue = 0;
  double spectral_norm = 0;
  double relative_min_eigenvalue = 0;
  Eigen::VectorXd worst_vector;  // unit bottom eigenvector
  double quadratic_form = 0;     // worst_vector^T M worst_vector
  double tol = 1e-10;
  Verdict verdict = Verdict::pd_on_sample;
};

GramReport analyze_gram(const Eigen::MatrixXd& M, double tol = 1e-10);

GramReport gram_test(const Kernel& K, std::span<const Vec3> points, double tol = 1e-10);
// any real symmetric two-point function on scalars (radii, 1-D momenta, x - y)
GramReport gram_test(const std::function<double(double, double)>& k, std::span<const double> xs,
                     double tol = 1e-10);

double quadratic_form(const Kernel& K, std::span<const Vec3> points, const Eigen::VectorXcd& c);
double ray_probe(const Kernel& K, const Vec3& direction, std::span<const double> radii,
                 std::span<const double> coefficients);
// k_j(s,s) + k_j(r,r) - 2 k_j(s,r)
double coefficient_probe(const Kernel& K, int j, double sigma, double rho);
// Gram of the coefficient kernel k_j over radii
GramReport coefficient_gram(const Kernel& K, int j, std::span<const double> radii, double tol = 1e-10);

// origin plus a product-rule sphere (n_theta Gauss cosines x n_phi azimuths) of radius rho
std::vector<Vec3> shell_configuration(double rho, int n_theta, int n_phi, bool with_origin = true);
// radii spaced uniformly in h_1 = rho / (1 + eps(rho)), h in (0, h_max]
std::vector<double> h1_ladder(int n, double h_max = 0.95);

struct SearchOptions {
  int n = 30;
  double box_radius = 10.0;
  std::vector<std::uint64_t> seeds;
  double tol = 1e-10;
  bool structured = true;
  bool parallel = false;
};

// Most negative relative minimum eigenvalue over seeded random point sets and,
// when structured, rays, geometric and h_1 ladders, shells and k_0 probes.
GramReport violation_search(const Kernel& K, const SearchOptions& opt);

// n random points in the ball of radius R from seed
std::vector<Vec3> random_points(std::uint64_t seed, int n, double radius);

json to_json(const GramReport& r, bool include_matrix = false);

}  // namespace poloc
