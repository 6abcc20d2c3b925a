#include <cmath>
#include <complex>

#include "doctest.h"
#include "poloc/kernel_json.hpp"
#include "poloc/kinematics.hpp"
#include "poloc/pd.hpp"

using namespace poloc;

TEST_SUITE("pd") {
  TEST_CASE("newton wigner gram is rank one") {
    const auto pts = random_points(1, 10, 5.0);
    const GramReport r = gram_test(kernel_nwl(), pts);
    CHECK(r.verdict == Verdict::pd_on_sample);
    CHECK(std::abs(r.min_eigenvalue) <= 1e-12);
    CHECK(r.spectrum(9) == doctest::Approx(10.0).epsilon(1e-13));
    for (int i = 0; i < 9; ++i) CHECK(std::abs(r.spectrum(i)) <= 1e-12);
  }

  TEST_CASE("causal power gram") {
    const auto pts = random_points(2, 30, 10.0);
    const GramReport r = gram_test(kernel_causal_power(1.5), pts);
    CHECK(r.relative_min_eigenvalue >= -1e-10);
    CHECK(r.verdict == Verdict::pd_on_sample);
    // Cauchy-Schwarz on the PD sample
    for (int a = 0; a < 30; ++a)
      for (int b = 0; b < 30; ++b)
        CHECK(r.gram(a, b) * r.gram(a, b) <= r.gram(a, a) * r.gram(b, b) + 1e-9);
    CHECK((r.gram - r.gram.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
  }

  TEST_CASE("violated verdict carries a certifying vector") {
    SearchOptions opt;
    opt.seeds = {1, 2, 3};
    const GramReport r = violation_search(kernel_causal_power(1.0), opt);
    REQUIRE(r.verdict == Verdict::violated);
    CHECK(r.quadratic_form < -r.tol);
    CHECK(r.worst_vector.norm() == doctest::Approx(1.0));
  }

  TEST_CASE("ray probe") {
    const Vec3 d(0, 0, 1);
    const std::vector<double> radii{1, 2}, c{1, -1};
    CHECK(ray_probe(kernel_causal_power(1.5), d, radii, c) >= 0);
    const Kernel K1 = kernel_causal_power(1.0);
    CHECK(ray_probe(K1, d, radii, c) == doctest::Approx(2 - 2 * K1(d, 2 * d)).epsilon(1e-14));
  }

  TEST_CASE("coefficient probe") {
    CHECK(coefficient_probe(kernel_lorentz(power_profile(0.5)), 0, 1, 2) >= 0);
    // c = (1, -1) is not the bottom direction of the k_0 Gram at radii {1, 2};
    // the 2 x 2 spectrum certifies the violation instead
    CHECK(coefficient_probe(kernel_causal_power(1.0), 0, 1, 2) == doctest::Approx(0.0206242184744082).epsilon(1e-9));
    CHECK(coefficient_probe(kernel_lorentz(power_profile(0.3)), 0, 1, 2) ==
          doctest::Approx(0.00510135824780524).epsilon(1e-9));
    const std::vector<double> radii{1, 2};
    const GramReport k1 = coefficient_gram(kernel_causal_power(1.0), 0, radii);
    CHECK(k1.min_eigenvalue == doctest::Approx(-0.00900733471597351).epsilon(1e-8));
    CHECK(k1.verdict == Verdict::violated);
    const GramReport g03 = coefficient_gram(kernel_lorentz(power_profile(0.3)), 0, radii);
    CHECK(g03.min_eigenvalue == doctest::Approx(-0.000773392307143607).epsilon(1e-8));
    CHECK(g03.verdict == Verdict::violated);
    CHECK(coefficient_gram(kernel_causal_power(1.25), 0, radii).verdict == Verdict::violated);
    CHECK(coefficient_gram(kernel_causal_power(1.5), 0, radii).min_eigenvalue >= -1e-12);
  }

  TEST_CASE("violation search") {
    SearchOptions opt;
    for (std::uint64_t s = 1; s <= 100; ++s) opt.seeds.push_back(s);
    const GramReport pd = violation_search(kernel_causal_power(1.5), opt);
    CHECK(pd.relative_min_eigenvalue >= -1e-10);
    const GramReport bad = violation_search(kernel_causal_power(1.25), opt);
    CHECK(bad.verdict == Verdict::violated);
    const GramReport again = violation_search(kernel_causal_power(1.25), opt);
    CHECK(again.relative_min_eigenvalue == bad.relative_min_eigenvalue);
  }

  TEST_CASE("mixtures with supplementary mass") {
    MixtureSpec m;
    m.principal = {{2.0, 0.5}};
    m.supplementary = {{0.4, 0.5}};
    SearchOptions opt;
    opt.seeds = {1, 2, 3, 4, 5};
    const GramReport r = violation_search(kernel_causal(profile_product(power_profile(1.5), profile_mixture(m))), opt);
    CHECK(r.verdict == Verdict::pd_on_sample);
  }

  TEST_CASE("product closure") {
    const auto pts = random_points(5, 30, 8.0);
    for (double l : {0.0, 0.3, 0.5}) {
      const Kernel K = kernel_product(kernel_causal_power(1.5),
                                      kernel_lorentz(profile_irreducible(Series::supplementary, l)));
      CHECK(gram_test(K, pts).verdict == Verdict::pd_on_sample);
    }
  }

  TEST_CASE("scale consistency") {
    const auto pts = random_points(7, 12, 4.0);
    const Kernel K = kernel_causal_power(1.0);
    Rng rng(8);
    Eigen::VectorXcd c(12);
    for (int i = 0; i < 12; ++i) c(i) = {normal01(rng), normal01(rng)};
    const std::complex<double> z(1.5, -0.7);
    const double q = quadratic_form(K, pts, c), qz = quadratic_form(K, pts, z * c);
    CHECK(qz == doctest::Approx(std::norm(z) * q).epsilon(1e-12));
  }

  TEST_CASE("duplicate points rejected") {
    std::vector<Vec3> pts{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 0, 0)};
    CHECK_THROWS_AS(gram_test(kernel_nwl(), pts), DomainError);
  }

  TEST_CASE("scalar gram and ladders") {
    const auto h = h1_ladder(10);
    CHECK(h.size() == 10);
    for (double r : h) CHECK(r > 0);
    const GramReport r = gram_test([](double x, double y) { return std::exp(-(x - y) * (x - y)); }, h);
    CHECK(r.verdict == Verdict::pd_on_sample);
    const auto shell = shell_configuration(2.0, 4, 6);
    CHECK(shell.size() == 25);
    CHECK(shell[0].norm() == 0.0);
    CHECK(shell[1].norm() == doctest::Approx(2.0));
  }

  TEST_CASE("json report") {
    const GramReport r = gram_test(kernel_nwl(), random_points(1, 4, 2.0));
    const json j = to_json(r);
    CHECK(j.at("verdict") == "pd_on_sample");
    CHECK(j.at("spectrum").size() == 4);
  }
}
