#include <cmath>

#include "doctest.h"
#include "poloc/kinematics.hpp"
#include "poloc/specfun.hpp"

using namespace poloc;

TEST_SUITE("specfun") {
  TEST_CASE("legendre values") {
    CHECK(legendre_p(0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(legendre_p(1, -0.7) == doctest::Approx(-0.7).epsilon(1e-15));
    CHECK(legendre_p(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
    for (int j = 0; j <= 40; ++j)
      for (double x = -1.0; x <= 1.0; x += 0.01) CHECK(std::abs(legendre_p(j, x)) <= 1.0 + 1e-14);
  }

  TEST_CASE("legendre domain") {
    CHECK_THROWS_AS(legendre_p(3, 1.1), DomainError);
    CHECK(legendre_p(5, 1.0 + 1e-13) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> all;
    legendre_all(10, 0.37, all);
    REQUIRE(all.size() == 11);
    for (int j = 0; j <= 10; ++j) CHECK(all[j] == doctest::Approx(legendre_p(j, 0.37)).epsilon(1e-14));
  }

  TEST_CASE("gegenbauer values") {
    CHECK(gegenbauer_c(0, 1.5, 0.2) == doctest::Approx(1.0));
    CHECK(gegenbauer_c(1, 1.5, 0.2) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::abs(gegenbauer_c(4, 0.5, 0.9) - legendre_p(4, 0.9)) <= 1e-12);
    CHECK_THROWS_AS(gegenbauer_c(2, 0.0, 0.1), DomainError);
  }

  TEST_CASE("gegenbauer generating function") {
    for (double r : {0.5, 1.5, 2.0})
      for (double h : {0.1, 0.3, 0.5})
        for (double x = -1.0; x <= 1.0; x += 0.125) {
          double s = 0, hn = 1;
          for (int n = 0; n <= 60; ++n, hn *= h) s += gegenbauer_c(n, r, x) * hn;
          CHECK(std::abs(std::pow(1 - 2 * h * x + h * h, -r) - s) <= 1e-10);
        }
  }

  TEST_CASE("gauss legendre rules") {
    const GaussRule g2 = gauss_legendre_nodes(2);
    CHECK(g2.nodes[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.nodes[1] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    const GaussRule g3 = gauss_legendre_nodes(3);
    double s = 0;
    for (std::size_t i = 0; i < g3.size(); ++i) s += g3.weights[i] * std::pow(g3.nodes[i], 4);
    CHECK(std::abs(s - 0.4) <= 1e-14);
    const auto g8 = gauss_legendre(8);
    double o = 0;
    for (std::size_t i = 0; i < g8->size(); ++i) o += g8->weights[i] * legendre_p(3, g8->nodes[i]) * legendre_p(5, g8->nodes[i]);
    CHECK(std::abs(o) <= 1e-13);
  }

  TEST_CASE("legendre orthogonality") {
    const auto g = gauss_legendre(16);
    for (int i = 0; i <= 12; ++i)
      for (int j = 0; j <= 12; ++j) {
        double s = 0;
        for (std::size_t q = 0; q < g->size(); ++q) s += g->weights[q] * legendre_p(i, g->nodes[q]) * legendre_p(j, g->nodes[q]);
        CHECK(std::abs(s * (j + 0.5) - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
  }

  TEST_CASE("rapidity round trip") {
    for (double lt = 0; lt <= 6.0; lt += 0.05) {
      const double t = std::pow(10.0, lt);
      CHECK(std::abs(std::cosh(rapidity(t)) - t) <= 1e-12 * t);
    }
    CHECK(rapidity(1.0) == 0.0);
    CHECK(rapidity_from_excess(std::cosh(0.3) - 1) == doctest::Approx(0.3).epsilon(1e-14));
  }

  TEST_CASE("energy and h1") {
    const Energy e{2.0};
    CHECK(e(0.0) == 2.0);
    CHECK(e(Vec3(3, 0, 0)) == doctest::Approx(std::sqrt(13.0)));
    CHECK(energy(Vec3(1, 2, 2)) == doctest::Approx(std::sqrt(10.0)));
    CHECK(h1(1.0) == doctest::Approx(1 / (1 + std::sqrt(2.0))));
    CHECK(ell(2.0) == doctest::Approx(std::log(std::sqrt(5.0) + 2)));
  }

  TEST_CASE("minkowski excess is stable and nonnegative") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
      const Vec3 k = random_in_ball(rng, 5), p = random_in_ball(rng, 5);
      const double naive = energy(k) * energy(p) - k.dot(p) - 1.0;
      CHECK(std::abs(minkowski_excess(k, p) - naive) <= 1e-12 * (1 + std::abs(naive)));
    }
    const Vec3 big(1e7, 2e7, -3e7);
    CHECK(minkowski_excess(big, big) == 0.0);
    const Vec3 near = big + Vec3(1e-3, 0, 0);
    CHECK(minkowski_excess(big, near) >= 0.0);
    CHECK(minkowski_excess_1d(1e6, 1e6) == 0.0);
  }

  TEST_CASE("sinc sinhc spherical bessel") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-6) == doctest::Approx(std::sin(1e-6) / 1e-6).epsilon(1e-15));
    CHECK(sinhc(2.0) == doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-15));
    for (int l = 0; l <= 4; ++l)
      for (double x : {1e-3, 0.2, 1.0, 3.0, 17.5}) {
        CHECK(sph_j(l, x) == doctest::Approx(std::sph_bessel(l, x)).epsilon(1e-12));
        const double h = 1e-5;
        CHECK(sph_j_prime(l, x) == doctest::Approx((sph_j(l, x + h) - sph_j(l, x - h)) / (2 * h)).epsilon(1e-7));
      }
  }

  TEST_CASE("integration wrappers") {
    CHECK(integrate([](double x) { return std::exp(-x); }, 0, 1) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(integrate_to_infinity([](double x) { return std::exp(-x * x); }, 0.0) ==
          doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-12));
    const GaussRule r = panel_gauss(0.0, 3.0, 0.4, 8);
    double s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::cos(r.nodes[i]);
    CHECK(s == doctest::Approx(std::sin(3.0)).epsilon(1e-14));
  }
}
