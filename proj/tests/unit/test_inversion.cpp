#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "poloc/inversion.hpp"

using namespace poloc;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double si(double x) {
  if (x == 0) return 0;
  return integrate([](double s) { return sinc(s); }, 0, x, 1e-14, 1e-13);
}

}  // namespace

TEST_SUITE("inversion") {
  TEST_CASE("psi closed forms") {
    const auto p1 = psi_of(power_profile(1.0));
    const auto p32 = psi_of(power_profile(1.5));
    CHECK(p1(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p32(0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : {0.3, 1.0, 2.0, 5.0}) {
      CHECK(std::abs(p1(x) - 2 / (1 + std::cosh(x))) <= 1e-10);
      const double c = std::cosh(x / 2);
      CHECK(std::abs(p32(x) - (2 - c * c) / (c * c * c)) <= 1e-10);
      CHECK(p1(-x) == doctest::Approx(p1(x)).epsilon(1e-12));
    }
    CHECK(p32(2.0) < 0);
    const auto pc = psi_of(custom_profile("g1 numeric", [](double t) { return 2 / (1 + t); }));
    for (double x : {0.5, 1.5, 4.0}) CHECK(std::abs(pc(x) - 2 / (1 + std::cosh(x))) <= 1e-8);
  }

  TEST_CASE("principal class membership") {
    CHECK(in_principal_class(power_profile(1.0)));
    CHECK(in_principal_class(power_profile(1.5)));
    CHECK(!in_principal_class(profile_irreducible(Series::supplementary, 0.5)));
    CHECK_THROWS_AS(psi_of(profile_irreducible(Series::supplementary, 0.5)), DomainError);
  }

  TEST_CASE("weight functions") {
    const WeightFunction w1 = invert(power_profile(1.0));
    const WeightFunction w2 = invert(power_profile(2.0));
    const WeightFunction w32 = invert(power_profile(1.5));
    for (double l = 0.1; l <= 5.0 + 1e-9; l += 0.01) {
      CHECK(rel(w1(l), 4 * l / std::sinh(pi * l)) <= 1e-6);
      CHECK(rel(w2(l), 8 * l * l * l / std::sinh(pi * l)) <= 1e-6);
      CHECK(rel(w32(l), 8 * l * l / std::cosh(pi * l)) <= 1e-6);
    }
    CHECK(w1(1.0) == doctest::Approx(0.34636).epsilon(1e-5));
    for (const WeightFunction* w : {&w1, &w2, &w32}) {
      CHECK(std::abs(w->normalization - 1) <= 1e-6);
      CHECK(w->max_imag <= 1e-9);
      for (double v : w->w) CHECK(v >= -1e-8);
    }
  }

  TEST_CASE("forward round trips") {
    std::vector<double> ts;
    for (double lt = 0; lt <= 2.0; lt += 0.05) ts.push_back(std::pow(10.0, lt));
    for (double r : {1.0, 2.0, 1.5}) {
      const RadialProfile g = power_profile(r);
      const auto back = forward(invert(g), ts);
      for (std::size_t i = 0; i < ts.size(); ++i) CHECK(rel(back[i], g(ts[i])) <= 1e-5);
    }
    const WeightFunction w1 = invert(power_profile(1.0));
    CHECK(forward(w1, std::vector<double>{1.0})[0] == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("point mass at zero") {
    MixtureSpec m;
    m.principal = {{0.0, 1.0}};
    const RadialProfile g = profile_mixture(m);
    for (double k : {0.5, 1.0, 3.0}) CHECK(g(std::cosh(k)) == doctest::Approx(k / std::sinh(k)).epsilon(1e-13));
    CHECK_THROWS_AS(invert(g), DomainError);
  }

  TEST_CASE("sine integral mixture") {
    // w = 1 on [0, 1] gives g(cosh k) = Si(k) / sinh k
    const WeightFunction w = WeightFunction::tabulate([](double l) { return l <= 1.0 ? 1.0 : 0.0; }, 1.0, 4097);
    std::vector<double> ts;
    for (double k = 0.05; k <= 5.0; k += 0.05) ts.push_back(std::cosh(k));
    const auto g = forward(w, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double k = std::acosh(ts[i]);
      CHECK(rel(g[i], si(k) / std::sinh(k)) <= 1e-5);
    }
    const RadialProfile p = custom_profile("si", [](double t) {
      const double k = rapidity(t);
      return k == 0 ? 1.0 : si(k) / std::sinh(k);
    });
    CHECK_THROWS_AS(invert(p), DomainError);
  }

  TEST_CASE("positive type") {
    std::vector<double> xs;
    for (int i = 0; i < 40; ++i) xs.push_back(-6 + 12.0 * i / 39);
    CHECK(psi_positive_type_check(power_profile(1.0), xs).verdict == Verdict::pd_on_sample);
    CHECK(psi_positive_type_check(power_profile(1.5), xs).verdict == Verdict::pd_on_sample);
    CHECK(positive_type_check([](double x) { return std::cos(3 * x); }, xs).verdict == Verdict::pd_on_sample);
    const RadialProfile c3 = custom_profile("cos3", [](double t) {
      const double k = rapidity(t);
      return k == 0 ? 1.0 : std::sin(3 * k) / (3 * std::sinh(k));
    });
    CHECK_THROWS_AS(invert(c3), DomainError);
  }

  TEST_CASE("weight export") {
    const WeightFunction w = WeightFunction::tabulate([](double l) { return std::exp(-l); }, 12, 64);
    std::ostringstream os;
    write_weight_csv(os, w);
    CHECK(os.str().rfind("lambda,w", 0) == 0);
    const json j = to_json(w, true);
    CHECK(j.contains("normalization"));
    CHECK(w(13.0) == 0.0);
  }
}
