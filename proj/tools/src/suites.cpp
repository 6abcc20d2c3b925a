#include "poloc/cli/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <functional>
#include <map>

#include "poloc/poloc.hpp"

namespace poloc::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
  return g;
}

Kernel lorentz_series(Series s, double l) { return kernel_lorentz(profile_irreducible(s, l)); }

void suite_pd(RunRecord& r, const RunConfig& c) {
  SearchOptions opt;
  opt.n = c.budgets.pd_points;
  opt.tol = c.tolerances.pd;
  opt.parallel = c.parallel;
  for (int i = 0; i < c.budgets.pd_sets; ++i) opt.seeds.push_back(c.seed * 1000003ULL + i);
  const std::vector<Kernel> positive{kernel_causal_power(1.5),
                                     kernel_causal_power(2),
                                     kernel_causal_power(3),
                                     kernel_lorentz(power_profile(0.5)),
                                     kernel_lorentz(power_profile(1)),
                                     lorentz_series(Series::supplementary, 0.3),
                                     lorentz_series(Series::principal, 0.0),
                                     kernel_product(kernel_causal_power(1.5), lorentz_series(Series::supplementary, 0.0))};
  const std::vector<Kernel> negative{kernel_causal_power(0.5), kernel_causal_power(1), kernel_causal_power(1.25),
                                     kernel_lorentz(power_profile(0.3)),
                                     kernel_causal(profile_irreducible(Series::principal, 1.0))};
  json pos = json::array(), neg = json::array();
  for (const auto& K : positive) {
    const GramReport g = violation_search(K, opt);
    pos.push_back(json{{"kernel", K.label()}, {"worst", g.relative_min_eigenvalue}, {"source", g.source}, {"seed", g.seed}});
    check(r, "pd " + K.label(), g.relative_min_eigenvalue, ">=", -c.tolerances.pd);
  }
  for (const auto& K : negative) {
    const GramReport g = violation_search(K, opt);
    neg.push_back(json{{"kernel", K.label()},
                       {"quadratic_form", g.quadratic_form},
                       {"relative_min_eigenvalue", g.relative_min_eigenvalue},
                       {"source", g.source},
                       {"seed", g.seed}});
    check(r, "violation " + K.label(), g.quadratic_form, "<", -c.tolerances.violation);
  }
  r.results["positive"] = pos;
  r.results["violations"] = neg;
}

void suite_nc(RunRecord& r, const RunConfig& c) {
  const auto rho = log_grid(0.05, 50.0, 50);
  auto record = [&](double rr, NcMode mode, bool equality) {
    const NcReport n = nc_check(power_profile(rr), mode, rho);
    const std::string name = "nc " + to_string(mode) + " r=" + num(rr);
    r.results[name] = json{{"min_margin", n.min_margin()}, {"max_abs_margin", n.max_abs_margin()}};
    if (equality)
      check(r, name + " equality", n.max_abs_margin(), "<=", c.tolerances.nc_equality);
    else
      check(r, name + " violation", n.min_margin(), "<", -c.tolerances.violation);
  };
  record(0.5, NcMode::profile_only, true);
  record(1.5, NcMode::with_prefactor, true);
  for (double rr : {0.25, 0.4}) record(rr, NcMode::profile_only, false);
  for (double rr : {0.75, 1.0, 1.25}) record(rr, NcMode::with_prefactor, false);
  // closed-form right side for the irreducible profiles
  for (auto [s, l] : {std::pair{Series::principal, 1.0}, {Series::supplementary, 0.3}}) {
    const auto id = nc_irreducible_identity(s, l, rho);
    const std::string name = std::string("irreducible rs ") + (s == Series::principal ? "P" : "S") + num(l);
    r.results[name] = id.max_rs_error();
    check(r, name, id.max_rs_error(), "<=", c.tolerances.nc_equality);
  }
}

void suite_invert(RunRecord& r, const RunConfig& c) {
  struct Case {
    double r;
    std::function<double(double)> w;
  };
  const double pi = std::numbers::pi;
  const std::vector<Case> cases{{1.0, [pi](double l) { return 4 * l / std::sinh(pi * l); }},
                                {2.0, [pi](double l) { return 8 * l * l * l / std::sinh(pi * l); }},
                                {1.5, [pi](double l) { return 8 * l * l / std::cosh(pi * l); }}};
  const auto ts = log_grid(1.0, 100.0, 200);
  for (const auto& cs : cases) {
    const RadialProfile g = power_profile(cs.r);
    const WeightFunction W = invert(g);
    double rel = 0;
    for (int i = 0; i <= 490; ++i) {
      const double l = 0.1 + 0.01 * i;
      rel = std::max(rel, std::abs(W(l) - cs.w(l)) / cs.w(l));
    }
    const auto f = forward(W, ts);
    double rt = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) rt = std::max(rt, std::abs(f[i] - g(ts[i])));
    const std::string name = "g" + num(cs.r);
    r.results[name] = json{{"relative_error", rel}, {"round_trip", rt}, {"normalization", W.normalization}, {"X", W.truncation}};
    check(r, "invert " + name, rel, "<=", c.tolerances.inversion);
    check(r, "round trip " + name, rt, "<=", c.tolerances.round_trip);
  }
}

void suite_maximality(RunRecord& r, const RunConfig& c) {
  const auto pairs = sample_pairs(c.seed, c.budgets.pairs);
  std::vector<std::pair<Kernel, bool>> ks{{kernel_causal_power(1.5), false},
                                          {kernel_causal_power(2), true},
                                          {kernel_causal_power(3), true}};
  for (double l : {0.0, 0.5})
    ks.push_back({kernel_product(kernel_causal_power(1.5), lorentz_series(Series::supplementary, l)), true});
  for (const auto& [K, strict] : ks) {
    const MaximalityReport m = maximality_check(K, pairs, strict);
    r.results[K.label()] = to_json(m);
    check(r, "bound " + K.label(), m.max_excess, "<=", c.tolerances.maximality);
    if (strict) check(r, "strict " + K.label(), static_cast<double>(m.strict_failures), "<=", 0.0);
  }
}

void suite_ct(RunRecord& r, const RunConfig& c) {
  const auto pairs = sample_pairs(c.seed + 1, 1000);
  std::vector<Kernel> currents{kernel_terno_moretti(), kernel_causal_power(1.5), kernel_causal_power(2),
                               kernel_causal(power_profile(0.5)), kernel_causal(profile_irreducible(Series::principal, 1.0))};
  for (const auto& K : currents) {
    const double res = conserved_check(K, pairs);
    r.results["conserved " + K.label()] = res;
    check(r, "conserved " + K.label(), res, "<=", c.tolerances.conserved);
  }
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < c.budgets.timelike_seeds; ++i) seeds.push_back(c.seed * 7919ULL + i);
  for (const auto& K : {kernel_terno_moretti(), kernel_causal_power(1.5)}) {
    const TimelikeReport t = timelike_definite_check(K, 5, seeds);
    r.results["timelike " + K.label()] = json{{"worst_margin", t.worst_margin}, {"worst_seed", t.worst_seed}};
    check(r, "timelike " + K.label(), t.worst_margin, ">=", -c.tolerances.timelike);
  }
  ProbabilityOptions po;
  po.resolution = c.budgets.resolution;
  po.parallel = c.parallel;
  json rows = json::array();
  for (const auto& K : {kernel_terno_moretti(), kernel_tct(), kernel_causal_power(1.5), kernel_causal_power(2)})
    for (double s : {0.5, 1.0})
      for (double t : {0.5, 1.0, 2.0}) {
        const CtMargin m = ct_inequality(K, gaussian_state(s), BallRegion(1.0), t, po);
        rows.push_back(json{{"kernel", K.label()}, {"s", s}, {"t", t}, {"margin", m.margin}, {"error", m.error},
                            {"method", to_string(m.grown.method)}});
        const std::string name = K.label() + " s=" + num(s) + " t=" + num(t);
        check(r, "ct margin " + name, m.margin, ">=", -3.0 * m.error);
        check(r, "ct error " + name, m.error, "<=", c.tolerances.ct_error);
      }
  r.results["ct"] = rows;
}

void suite_plss(RunRecord& r, const RunConfig& c) {
  ProbabilityOptions po;
  po.resolution = c.budgets.resolution;
  po.parallel = c.parallel;
  po.qmc_points = c.budgets.qmc_points;
  po.qmc_randomizations = c.budgets.randomizations;
  po.seed = c.seed;
  // NWL against the position-space Gaussian mass of the ball
  {
    const double x = 1.0;
    const double exact = std::erf(x) - 2.0 / std::sqrt(std::numbers::pi) * x * std::exp(-x * x);
    po.method = Method::tensor_quadrature;
    const auto a = probability(kernel_nwl(), gaussian_state(1.0), BallRegion(1.0), po);
    po.method = Method::quasi_monte_carlo;
    const auto q = probability(kernel_nwl(), gaussian_state(1.0), BallRegion(1.0), po);
    po.method = Method::automatic;
    r.results["nwl"] = json{{"exact", exact}, {"tensor", a.value}, {"qmc", q.value}, {"qmc_se", q.error}};
    check(r, "nwl tensor", std::abs(a.value - exact), "<=", 1e-6);
    check(r, "nwl qmc", std::abs(q.value - exact), "<=", 3.0 * q.error);
  }
  const std::vector<double> ns{2, 4, 8, 16, 32};
  for (const auto& K : {kernel_terno_moretti(), kernel_tct()}) {
    const auto seq = plss_sequence(K, Vec3(0, 0, 1), Vec3::Zero(), BallRegion(2.0), ns, po);
    json vals = json::array();
    double worst_step = INFINITY;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      vals.push_back(json{{"n", ns[i]}, {"value", seq[i].value}, {"error", seq[i].error}});
      if (i > 0) worst_step = std::min(worst_step, seq[i].value - seq[i - 1].value + seq[i].error + seq[i - 1].error);
    }
    r.results["plss " + K.label()] = vals;
    check(r, "plss increasing " + K.label(), worst_step, ">=", 0.0);
  }
  {
    Rng rng(c.seed);
    double tm = 0, tct = 0;
    const Kernel K = kernel_terno_moretti(), T = kernel_tct();
    for (int i = 0; i < 100; ++i) {
      const Vec3 k = random_in_ball(rng, 5.0), p = random_unit(rng) * uniform(rng, 0.5, 3.0);
      const double l = 1e6;
      // Richardson step removes the O(1/lambda) term
      tm = std::max(tm, std::abs(2 * K(k, 2 * l * p) - K(k, l * p) - tm_limit(k, p)));
      tct = std::max(tct, std::abs(2 * T(k, 2 * l * p) - T(k, l * p) - tct_limit(k, p)));
    }
    r.results["limit_tm"] = tm;
    r.results["limit_tct"] = tct;
    check(r, "limit tm", tm, "<=", 1e-8);
    check(r, "limit tct", tct, "<=", 1e-8);
  }
  for (double m : {0.5, 2.0}) {
    const MassScaling s = mass_scaling_check(power_profile(1.5), m, BallRegion(1.0), gaussian_state(1.0), po);
    r.results["mass m=" + num(m)] = json{{"residual", s.residual}, {"error", s.error}};
    check(r, "mass scaling m=" + num(m), s.residual, "<=", 1e-4);
  }
  json nb = json::array();
  double prev = 0;
  for (int N : {4, 8, 12}) {
    const NormBound b = norm_lower_bound(kernel_terno_moretti(), BallRegion(1.0), N, po);
    nb.push_back(json{{"N", N}, {"bound", b.bound}, {"kept", b.kept}});
    check(r, "norm bound nondecreasing N=" + std::to_string(N), b.bound - prev, ">=", -1e-10);
    check(r, "norm bound at most one N=" + std::to_string(N), b.bound, "<=", 1.0 + 1e-10);
    prev = b.bound;
  }
  r.results["norm_bound_tm"] = nb;
}

void suite_onedim(RunRecord& r, const RunConfig& c) {
  const IdentityReport id = amkk_identities(power_profile(1.0), 100, c.seed);
  r.results["identities"] = to_json(id);
  check(r, "prefactor identity", id.prefactor_residual, "<=", c.tolerances.identity);
  check(r, "factor identity", id.factor_residual, "<=", c.tolerances.identity);
  const GaussianCounterexample g = gaussian_counterexample(2.0);
  const double closed = -2.0 * std::exp(0.5) * std::exp(-std::numbers::pi * std::numbers::pi / 2.0);
  r.results["gaussian"] = to_json(g);
  check(r, "fhat closed form", std::abs(g.fhat_closed - closed), "<=", c.tolerances.fourier);
  check(r, "fhat numeric", std::abs(g.fhat_numeric - closed), "<=", c.tolerances.fourier);
  check(r, "f max", g.grid_max, "<=", 1.0 + 1e-12);
  check(r, "f argmax", std::abs(g.argmax), "<=", 0.0);
  check(r, "fhat negative", g.fhat_min, "<", 0.0);
  Rng rng(c.seed);
  std::vector<double> xs;
  for (int i = 0; i < 30; ++i) xs.push_back(uniform(rng, -5.0, 5.0));
  for (double rr : {0.5, 1.0, 1.5}) {
    const FactorizationReport f = factorization_check(power_profile(rr), xs);
    const std::string name = "stationary r=" + num(rr);
    r.results[name] = f.stationary.relative_min_eigenvalue;
    check(r, name, f.stationary.relative_min_eigenvalue, ">=", -c.tolerances.pd);
  }
  const GramReport v = shifted_violation_search(gaussian_profile(2.0));
  r.results["gaussian_kernel_violation"] = v.quadratic_form;
  check(r, "gaussian K1 violation", v.quadratic_form, "<", -c.tolerances.violation);
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.1 * i);
  double worst = 0;
  for (const auto& row : infinite_divisibility_check(grid)) worst = std::max(worst, std::abs(row.lhs - row.rhs));
  r.results["levy_khinchin"] = worst;
  check(r, "levy khinchin", worst, "<=", c.tolerances.fourier);
}

const std::map<std::string, std::function<void(RunRecord&, const RunConfig&)>>& table() {
  static const std::map<std::string, std::function<void(RunRecord&, const RunConfig&)>> t{
      {"pd", suite_pd},   {"nc", suite_nc},     {"invert", suite_invert}, {"maximality", suite_maximality},
      {"ct", suite_ct},   {"plss", suite_plss}, {"onedim", suite_onedim}};
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"pd", "nc", "invert", "maximality", "ct", "plss", "onedim"};
  return n;
}

bool is_suite(const std::string& name) { return name == "all" || table().count(name) > 0; }

RunRecord run_suite(const std::string& name, const RunConfig& config) {
  auto it = table().find(name);
  if (it == table().end()) throw ConfigError("unknown suite '" + name + "'");
  RunRecord r;
  r.suite = name;
  r.config_hash = config_hash(config);
  r.seed = config.seed;
  r.timestamp = utc_timestamp();
  r.version = POLOC_VERSION;
  const auto t0 = Clock::now();
  try {
    it->second(r, config);
  } catch (const DomainError& e) {
    r.results["error"] = e.what();
    check(r, "completed", 0.0, ">", 0.0);
  }
  r.timings["total"] = seconds_since(t0);
  return r;
}

std::vector<RunRecord> run_suites(const std::string& name, const RunConfig& config) {
  std::vector<RunRecord> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, config));
  } else {
    out.push_back(run_suite(name, config));
  }
  return out;
}

}  // namespace poloc::cli
