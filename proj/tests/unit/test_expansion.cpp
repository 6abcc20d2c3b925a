#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "poloc/expansion.hpp"
#include "poloc/kernel_json.hpp"
#include "poloc/kinematics.hpp"
#include "poloc/pd.hpp"

using namespace poloc;

TEST_SUITE("expansion") {
  TEST_CASE("newton wigner coefficients") {
    const auto c = extract_coefficients(kernel_nwl(), 4);
    for (double s : {0.1, 1.0, 7.0})
      for (double r : {0.3, 2.0}) {
        CHECK(std::abs(c(0, s, r) - 1.0) <= 1e-14);
        for (int j = 1; j <= 4; ++j) CHECK(std::abs(c(j, s, r)) <= 1e-14);
        CHECK(reconstruct(c, s, r, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
      }
    CHECK(std::abs(tail_bound(extract_coefficients(kernel_nwl(), 0), 3.0)) <= 1e-14);
  }

  TEST_CASE("terno moretti coefficients") {
    const auto c = extract_coefficients(kernel_terno_moretti(), 1);
    const double s = 1, r = 2;
    CHECK(std::abs(c(1, s, r) - s * r / (2 * energy(s) * energy(r))) <= 1e-10);
    CHECK(std::abs(tail_bound(c, 1.0)) <= 1e-12);
    const auto c3 = extract_coefficients(kernel_terno_moretti(), 3);
    CHECK(std::abs(c3(2, 1.5, 0.7)) <= 1e-13);
    CHECK(std::abs(c3(3, 1.5, 0.7)) <= 1e-13);
  }

  TEST_CASE("g half coefficients") {
    const auto c = extract_coefficients(kernel_lorentz(power_profile(0.5)), 8);
    for (double s : {0.5, 1.0, 3.0})
      for (double r : {0.2, 1.0, 4.0})
        for (int j = 0; j <= 8; ++j) {
          const double a = std::sqrt(2.0) * std::pow(s, j) / std::pow(1 + energy(s), j + 0.5);
          const double b = std::sqrt(2.0) * std::pow(r, j) / std::pow(1 + energy(r), j + 0.5);
          CHECK(std::abs(c(j, s, r) - a * b) <= 1e-8);
          CHECK(std::abs(g_half_coefficient(j, s, r) - a * b) <= 1e-14);
        }
    const auto c20 = extract_coefficients(kernel_lorentz(power_profile(0.5)), 20);
    CHECK(std::abs(reconstruct(c20, 1, 1, 0.5) - power_profile(0.5)(energy(1.0) * energy(1.0) - 0.5)) <= 1e-8);
    CHECK(tail_bound(c20, 1.0) < 1e-6);
    CHECK(tail_bound(c20, 1.0) > -1e-12);
  }

  TEST_CASE("causal power reconstruction") {
    const Kernel K = kernel_causal_power(1.5);
    const auto c = extract_coefficients(K, 40);
    CHECK(reconstruction_error(c, 2, 3, -0.2) <= 1e-6);
    CHECK(std::abs(reconstruct(c, 2, 3, -0.2) - K.radial(2, 3, -0.2)) <= 1e-6);
  }

  TEST_CASE("diagonal normalization with adaptive order") {
    const std::vector<double> radii{0.1, 0.5, 1, 2, 5};
    for (const char* name : {"nwl", "tm", "tct", "K1.5", "K2", "g0.5", "gP1", "gS0.3"}) {
      const Kernel K = kernel_from_name(name);
      const auto c = extract_adaptive(K, radii);
      for (double r : radii) {
        const double t = tail_bound(c, r);
        INFO(name << " rho=" << r);
        CHECK(t <= 1e-6);
        CHECK(t >= -1e-9);
      }
    }
  }

  TEST_CASE("coefficient positive definiteness") {
    const std::vector<double> radii{0.3, 0.9, 1.7, 3.2, 6.0};
    for (const char* name : {"K1.5", "g0.5", "tm"}) {
      const Kernel K = kernel_from_name(name);
      for (int j = 0; j <= 3; ++j) {
        const GramReport r = coefficient_gram(K, j, radii, 1e-9);
        INFO(name << " j=" << j);
        CHECK(r.min_eigenvalue >= -1e-9);
      }
    }
  }

  TEST_CASE("round trip on finite kernels") {
    for (const Kernel& K : {kernel_terno_moretti(), kernel_tct()}) {
      const auto c = extract_coefficients(K, 1);
      const Kernel back = kernel_from_coefficients(c);
      Rng rng(3);
      for (int i = 0; i < 30; ++i) {
        const Vec3 k = random_in_ball(rng, 5), p = random_in_ball(rng, 5);
        CHECK(std::abs(back(k, p) - K(k, p)) <= 1e-10);
      }
    }
  }

  TEST_CASE("rotation residual flags non invariant kernels") {
    const std::vector<double> grid{0.5, 1, 2};
    CHECK(rotation_residual(kernel_tct(), grid) <= 1e-12);
    Kernel::Parts parts;
    parts.label = "skew";
    parts.eval = [](const Vec3& k, const Vec3& p) { return 1.0 / (1.0 + (k - p).squaredNorm() + k.x() * p.x()); };
    const Kernel skew(parts);
    CHECK(rotation_residual(skew, grid) > 1e-8);
    CHECK_THROWS_AS(extract_coefficients(skew, 2, grid), DomainError);
  }

  TEST_CASE("csv export") {
    const auto c = extract_coefficients(kernel_terno_moretti(), 1);
    std::ostringstream os;
    const std::vector<double> grid{1, 2};
    write_coefficients_csv(os, c, grid);
    const std::string s = os.str();
    CHECK(s.rfind("j,sigma,rho,k_j", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 2 * 2 * 2);
  }
}
