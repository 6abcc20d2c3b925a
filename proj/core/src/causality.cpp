#include "poloc/causality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#include "poloc/pd.hpp"

namespace poloc {

std::string to_string(NcMode m) { return m == NcMode::profile_only ? "profile_only" : "with_prefactor"; }

double NcReport::min_margin() const {
  return margin.empty() ? 0.0 : *std::min_element(margin.begin(), margin.end());
}

double NcReport::max_abs_margin() const {
  double w = 0;
  for (double m : margin) w = std::max(w, std::abs(m));
  return w;
}

double nc_right_side(const RadialProfile& g, double rho) {
  if (!(rho > 0)) throw DomainError("nc: rho must be positive");
  // t = cosh x, x in [0, 2 l(rho)]
  const double X = 2.0 * std::asinh(rho);
  auto f = [&g](double x) { return g.at_rapidity(x) * std::sinh(x); };
  const double I = integrate(f, 0.0, X, 1e-12, 1e-13);
  return I / (2.0 * rho * rho);
}

double nc_left_side(const RadialProfile& g, double rho, NcMode mode) {
  const double eps = energy(rho);
  const double u = rho * rho / (1.0 + eps);  // eps - 1
  const double v = g.at_excess(u);
  const double alpha = mode == NcMode::with_prefactor ? (1.0 + eps) * (1.0 + eps) / (4.0 * eps) : 1.0;
  return alpha * v * v;
}

NcReport nc_check(const RadialProfile& g, NcMode mode, std::span<const double> rho_grid) {
  NcReport r;
  r.label = g.label();
  r.mode = mode;
  for (double rho : rho_grid) {
    const double ls = nc_left_side(g, rho, mode), rs = nc_right_side(g, rho);
    r.rho.push_back(rho);
    r.ls.push_back(ls);
    r.rs.push_back(rs);
    r.margin.push_back(rs - ls);
  }
  return r;
}

double IrreducibleNcReport::max_rs_error() const {
  double w = 0;
  for (const auto& row : rows) w = std::max(w, std::abs(row.rs_quadrature - row.rs_closed));
  return w;
}

IrreducibleNcReport nc_irreducible_identity(Series kind, double lambda, std::span<const double> rho_grid) {
  const RadialProfile g = profile_irreducible(kind, lambda);
  IrreducibleNcReport r{kind, lambda, {}};
  for (double rho : rho_grid) {
    const double l = std::asinh(rho);
    double f;
    if (lambda == 0.0) {
      f = l / rho;
    } else if (kind == Series::principal) {
      f = std::sin(lambda * l) / (lambda * rho);
    } else {
      f = std::sinh(lambda * l) / (lambda * rho);
    }
    const double eps = energy(rho);
    const double alpha = (1.0 + eps) * (1.0 + eps) / (4.0 * eps);
    r.rows.push_back({rho, nc_right_side(g, rho), f * f, nc_left_side(g, rho, NcMode::with_prefactor), alpha});
  }
  return r;
}

std::vector<MomentumPair> sample_pairs(std::uint64_t seed, std::size_t n, double box, double radial_max) {
  Rng rng(seed);
  std::vector<MomentumPair> out;
  out.reserve(n);
  const double lo = std::log(1e-2), hi = std::log(radial_max);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      out.emplace_back(random_in_ball(rng, box), random_in_ball(rng, box));
    } else {
      const double a = std::exp(uniform(rng, lo, hi)), b = std::exp(uniform(rng, lo, hi));
      out.emplace_back(a * random_unit(rng), b * random_unit(rng));
    }
  }
  return out;
}

MaximalityReport maximality_check(const Kernel& K, std::span<const MomentumPair> pairs, bool strict) {
  const Kernel top = kernel_causal_power(1.5, K.mass());
  MaximalityReport r;
  r.label = K.label();
  r.pairs = pairs.size();
  r.strict = strict;
  r.max_excess = -std::numeric_limits<double>::infinity();
  r.min_strict_margin = std::numeric_limits<double>::infinity();
  for (const auto& [k, p] : pairs) {
    const double a = std::abs(K(k, p)), b = top(k, p);
    const double ex = a - b;
    r.max_excess = std::max(r.max_excess, ex);
    if (ex > 1e-12) ++r.bound_failures;
    if (strict && (k - p).norm() > 0) {
      r.min_strict_margin = std::min(r.min_strict_margin, -ex);
      if (!(-ex > 0)) ++r.strict_failures;
    }
  }
  return r;
}

double conserved_check(const Kernel& K, const CurrentKernel& j, std::span<const MomentumPair> pairs) {
  const double m = K.mass();
  double worst = 0;
  for (const auto& [k, p] : pairs) {
    const double lhs = (energy(k, m) - energy(p, m)) * K(k, p);
    const double rhs = (k - p).dot(j(k, p));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double conserved_check(const Kernel& K, std::span<const MomentumPair> pairs) {
  if (!K.current()) throw DomainError("conserved_check: kernel " + K.label() + " has no current");
  return conserved_check(K, *K.current(), pairs);
}

TimelikeReport timelike_definite_check(const Kernel& K, int n, std::span<const std::uint64_t> seeds, double box) {
  if (!K.current()) throw DomainError("timelike_definite_check: kernel " + K.label() + " has no current");
  const CurrentKernel& J = *K.current();
  TimelikeReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (auto seed : seeds) {
    Rng rng(seed);
    std::vector<Vec3> pts;
    for (int a = 0; a < n; ++a) pts.push_back(random_in_ball(rng, box));
    Eigen::MatrixXd M(n, n);
    std::vector<Eigen::MatrixXd> C(3, Eigen::MatrixXd(n, n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        M(a, b) = K(pts[a], pts[b]);
        const Vec3 v = J(pts[a], pts[b]);
        for (int i = 0; i < 3; ++i) C[i](a, b) = v[i];
      }
    for (int trial = 0; trial < 2; ++trial) {
      Eigen::VectorXcd c(n);
      for (int a = 0; a < n; ++a)
        c[a] = trial == 0 ? std::complex<double>(normal01(rng), 0.0)
                          : std::complex<double>(normal01(rng), normal01(rng));
      c.normalize();
      auto form = [&](const Eigen::MatrixXd& A) { return (c.adjoint() * A.cast<std::complex<double>>() * c)(0, 0).real(); };
      const double t0 = form(M);
      double js = 0;
      for (int i = 0; i < 3; ++i) {
        const double ji = form(C[i]);
        js += ji * ji;
      }
      const double margin = t0 * t0 - js;
      ++rep.trials;
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_seed = seed;
      }
    }
  }
  return rep;
}

std::function<Vec4(const Vec3&, const Vec3&)> shell_current(const RadialProfile& g) {
  const double m = g.mass(), m2 = m * m;
  return [g, m, m2](const Vec3& k, const Vec3& p) -> Vec4 {
    return 0.5 * g.at_excess(minkowski_excess(k, p, m) / m2) * (on_shell(k, m) + on_shell(p, m));
  };
}

CurrentKernel covariant_current_decompose(const RadialProfile& g) {
  const auto v = shell_current(g);
  const double m = g.mass();
  return [v, m](const Vec3& k, const Vec3& p) -> Vec3 {
    const Vec4 w = v(k, p) / std::sqrt(energy(k, m) * energy(p, m));
    return Vec3(w[1], w[2], w[3]);
  };
}

void write_nc_csv(std::ostream& os, const NcReport& r) {
  os << "rho,ls,rs,margin,tol\n";
  os.precision(17);
  for (std::size_t i = 0; i < r.rho.size(); ++i)
    os << r.rho[i] << ',' << r.ls[i] << ',' << r.rs[i] << ',' << r.margin[i] << ",1e-12\n";
}

json to_json(const NcReport& r) {
  return json{{"label", r.label}, {"mode", to_string(r.mode)}, {"rho", r.rho}, {"ls", r.ls},
              {"rs", r.rs}, {"margin", r.margin}, {"min_margin", r.min_margin()},
              {"max_abs_margin", r.max_abs_margin()}};
}

json to_json(const MaximalityReport& r) {
  return json{{"label", r.label}, {"pairs", r.pairs}, {"max_excess", r.max_excess},
              {"min_strict_margin", r.strict ? r.min_strict_margin : 0.0}, {"bound_failures", r.bound_failures},
              {"strict_failures", r.strict_failures}, {"strict", r.strict}, {"ok", r.ok()}};
}

}  // namespace poloc
