#include "poloc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace poloc {

std::string to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::rotation_invariant: return "rotation_invariant";
    case SymmetryClass::lorentz_invariant_profile: return "lorentz_invariant_profile";
    case SymmetryClass::energy_prefactor_profile: return "energy_prefactor_profile";
    case SymmetryClass::finite_sum: return "finite_sum";
    case SymmetryClass::one_dimensional: return "one_dimensional";
  }
  return "unknown";
}

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::power: return "power";
    case ProfileKind::principal: return "principal";
    case ProfileKind::supplementary: return "supplementary";
    case ProfileKind::mixture: return "mixture";
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::product: return "product";
    case ProfileKind::custom: return "custom";
  }
  return "custom";
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// u = cosh(kappa) - 1 without cancellation
double excess_of_rapidity(double kappa) {
  const double s = std::sinh(0.5 * kappa);
  return 2.0 * s * s;
}

// F(kappa) for the irreducible profiles and F'(kappa)/sinh(kappa)
double irreducible_value(Series s, double lambda, double kappa) {
  const double num = (s == Series::principal) ? sinc(lambda * kappa) : sinhc(lambda * kappa);
  return num / sinhc(kappa);
}

double irreducible_du(Series s, double lambda, double kappa) {
  const double sign = (s == Series::principal) ? 1.0 : -1.0;
  if (kappa < 1e-4) return -(1.0 + sign * lambda * lambda) / 3.0;
  const double sh = std::sinh(kappa), ch = std::cosh(kappa);
  double fprime;
  if (lambda == 0.0) {
    fprime = (sh - kappa * ch) / (sh * sh);
  } else if (s == Series::principal) {
    fprime = (lambda * std::cos(lambda * kappa) * sh - std::sin(lambda * kappa) * ch) / (lambda * sh * sh);
  } else {
    fprime = (lambda * std::cosh(lambda * kappa) * sh - std::sinh(lambda * kappa) * ch) / (lambda * sh * sh);
  }
  return fprime / sh;
}

}  // namespace

RadialProfile::RadialProfile(ProfileKind kind, std::string label, Fn base, Fn dbase, double mass,
                             json params)
    : kind_(kind),
      label_(std::move(label)),
      base_(std::make_shared<const Fn>(std::move(base))),
      dbase_(dbase ? std::make_shared<const Fn>(std::move(dbase)) : nullptr),
      m_(mass),
      params_(std::move(params)) {
  if (!(mass > 0)) throw DomainError("profile: mass must be positive");
}

double RadialProfile::at_rapidity(double kappa) const { return at_excess(excess_of_rapidity(kappa)); }

double RadialProfile::derivative(double t) const {
  if (!has_derivative()) throw DomainError("profile " + label_ + " exposes no derivative");
  const double u = std::max(0.0, t / (m_ * m_) - 1.0);
  return (*dbase_)(u) / (m_ * m_);
}

RadialProfile RadialProfile::with_mass(double m) const {
  RadialProfile out = *this;
  if (!(m > 0)) throw DomainError("profile: mass must be positive");
  out.m_ = m;
  return out;
}

double MixtureSpec::total_weight() const {
  double s = 0;
  for (const auto& a : principal) s += a.weight;
  for (const auto& a : supplementary) s += a.weight;
  for (std::size_t i = 0; i + 1 < density_grid.size(); ++i) {
    const double h = density_grid[i + 1].first - density_grid[i].first;
    s += 0.5 * h * (density_grid[i].second + density_grid[i + 1].second);
  }
  return s;
}

void MixtureSpec::validate(double tol) const {
  for (const auto& a : principal) {
    if (!(a.lambda >= 0)) throw DomainError("mixture: principal lambda must be >= 0");
    if (!(a.weight > 0)) throw DomainError("mixture: atom weights must be positive");
  }
  for (const auto& a : supplementary) {
    if (!(a.lambda > 0 && a.lambda <= 1)) throw DomainError("mixture: supplementary lambda must lie in (0,1]");
    if (!(a.weight > 0)) throw DomainError("mixture: atom weights must be positive");
  }
  for (std::size_t i = 0; i < density_grid.size(); ++i) {
    if (!(density_grid[i].first >= 0)) throw DomainError("mixture: density grid must be in [0,inf)");
    if (i > 0) {
      const double h0 = density_grid[1].first - density_grid[0].first;
      const double h = density_grid[i].first - density_grid[i - 1].first;
      if (!(h > 0) || std::abs(h - h0) > 1e-9 * std::max(1.0, h0))
        throw DomainError("mixture: density grid must be uniform and increasing");
    }
  }
  if (density_grid.size() == 1) throw DomainError("mixture: density grid needs at least two points");
  const double w = total_weight();
  if (std::abs(w - 1.0) > tol) throw DomainError("mixture: weights sum to " + num(w) + ", not 1");
}

MixtureSpec MixtureSpec::from_density(const std::function<double(double)>& w, double lambda_max, int points) {
  MixtureSpec s;
  s.density_grid.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double l = lambda_max * i / (points - 1);
    s.density_grid.emplace_back(l, w(l));
  }
  return s;
}

RadialProfile power_profile(double r, double m) {
  if (!(r > 0)) throw DomainError("power profile: r must be positive");
  auto base = [r](double u) { return std::pow(2.0 / (2.0 + u), r); };
  auto d = [r](double u) { return -r / (2.0 + u) * std::pow(2.0 / (2.0 + u), r); };
  return RadialProfile(ProfileKind::power, "power_r" + num(r), base, d, m, json{{"profile", "power"}, {"r", r}});
}

RadialProfile profile_irreducible(Series kind, double lambda, double m) {
  if (kind == Series::principal && !(lambda >= 0))
    throw DomainError("principal series: lambda must be >= 0");
  if (kind == Series::supplementary && !(lambda >= 0 && lambda <= 1))
    throw DomainError("supplementary series: lambda must lie in [0,1]");
  auto base = [kind, lambda](double u) { return irreducible_value(kind, lambda, rapidity_from_excess(u)); };
  auto d = [kind, lambda](double u) { return irreducible_du(kind, lambda, rapidity_from_excess(u)); };
  const bool p = kind == Series::principal;
  return RadialProfile(p ? ProfileKind::principal : ProfileKind::supplementary,
                       (p ? "principal" : "supplementary") + num(lambda), base, d, m,
                       json{{"profile", p ? "principal" : "supplementary"}, {"lambda", lambda}});
}

namespace {

json mixture_json(const MixtureSpec& s) {
  json j;
  j["principal"] = json::array();
  for (const auto& a : s.principal) j["principal"].push_back({a.lambda, a.weight});
  j["supplementary"] = json::array();
  for (const auto& a : s.supplementary) j["supplementary"].push_back({a.lambda, a.weight});
  j["density_grid"] = json::array();
  for (const auto& [l, w] : s.density_grid) j["density_grid"].push_back({l, w});
  return j;
}

}  // namespace

RadialProfile profile_mixture(const MixtureSpec& spec, double m) {
  spec.validate();
  auto s = std::make_shared<const MixtureSpec>(spec);
  // trapezoid weights of the density part, folded into per-node weights
  auto dens = std::make_shared<std::vector<double>>();
  double h = 0, l0 = 0;
  if (s->density_grid.size() >= 2) {
    const std::size_t n = s->density_grid.size();
    h = s->density_grid[1].first - s->density_grid[0].first;
    l0 = s->density_grid[0].first;
    dens->resize(n);
    for (std::size_t i = 0; i < n; ++i)
      (*dens)[i] = h * s->density_grid[i].second * ((i == 0 || i + 1 == n) ? 0.5 : 1.0);
  }
  auto eval = [s, dens, h, l0](double u, bool deriv) {
    const double kappa = rapidity_from_excess(u);
    double v = 0;
    for (const auto& a : s->principal)
      v += a.weight * (deriv ? irreducible_du(Series::principal, a.lambda, kappa)
                             : irreducible_value(Series::principal, a.lambda, kappa));
    for (const auto& a : s->supplementary)
      v += a.weight * (deriv ? irreducible_du(Series::supplementary, a.lambda, kappa)
                             : irreducible_value(Series::supplementary, a.lambda, kappa));
    if (!dens->empty()) {
      if (deriv || kappa < 1e-6) {
        for (std::size_t i = 0; i < dens->size(); ++i) {
          const double l = l0 + i * h;
          v += (*dens)[i] * (deriv ? irreducible_du(Series::principal, l, kappa)
                                   : irreducible_value(Series::principal, l, kappa));
        }
      } else {
        // sin(l kappa) on the uniform grid by the three-term recurrence
        const double c2 = 2.0 * std::cos(h * kappa);
        double sm1 = std::sin((l0 - h) * kappa), s0 = std::sin(l0 * kappa);
        const double sh = std::sinh(kappa);
        double acc = 0;
        for (std::size_t i = 0; i < dens->size(); ++i) {
          const double l = l0 + i * h;
          const double term = (l == 0.0) ? kappa : s0 / l;
          acc += (*dens)[i] * term;
          const double sp1 = c2 * s0 - sm1;
          sm1 = s0;
          s0 = sp1;
        }
        v += acc / sh;
      }
    }
    return v;
  };
  return RadialProfile(ProfileKind::mixture, "mixture", [eval](double u) { return eval(u, false); },
                       [eval](double u) { return eval(u, true); }, m,
                       json{{"profile", "mixture"}, {"mixture", mixture_json(spec)}});
}

RadialProfile gaussian_profile(double varsigma, double m) {
  if (!(varsigma > 0)) throw DomainError("gaussian profile: width must be positive");
  const double v2 = varsigma * varsigma;
  auto base = [v2](double u) {
    const double k = rapidity_from_excess(u);
    return std::exp(-k * k / (2.0 * v2));
  };
  auto d = [v2](double u) {
    const double k = rapidity_from_excess(u);
    return -std::exp(-k * k / (2.0 * v2)) / (v2 * sinhc(k));
  };
  return RadialProfile(ProfileKind::gaussian, "gaussian" + num(varsigma), base, d, m,
                       json{{"profile", "gaussian"}, {"sigma", varsigma}});
}

RadialProfile profile_product(const RadialProfile& a, const RadialProfile& b) {
  if (std::abs(a.mass() - b.mass()) > 1e-15 * a.mass()) throw DomainError("profile product: masses differ");
  auto fa = [a](double u) { return a.at_excess(u); };
  auto fb = [b](double u) { return b.at_excess(u); };
  RadialProfile::Fn d;
  if (a.has_derivative() && b.has_derivative()) {
    const double m2 = a.mass() * a.mass();
    d = [a, b, m2](double u) {
      const double t = m2 * (1.0 + u);
      return m2 * (a.derivative(t) * b.at_excess(u) + a.at_excess(u) * b.derivative(t));
    };
  }
  return RadialProfile(ProfileKind::product, a.label() + "*" + b.label(),
                       [fa, fb](double u) { return fa(u) * fb(u); }, d, a.mass(),
                       json{{"profile", "product"}, {"factors", {a.parameters(), b.parameters()}}});
}

RadialProfile custom_profile(std::string label, RadialProfile::Fn g_of_t, double m, RadialProfile::Fn dg_dt) {
  const double m2 = m * m;
  auto base = [g_of_t, m2](double u) { return g_of_t(m2 * (1.0 + u)); };
  RadialProfile::Fn d;
  if (dg_dt) d = [dg_dt, m2](double u) { return m2 * dg_dt(m2 * (1.0 + u)); };
  const double g0 = g_of_t(m2);
  if (std::abs(g0 - 1.0) > 1e-12) throw DomainError("custom profile: g(m^2) must be 1");
  return RadialProfile(ProfileKind::custom, label, base, d, m,
                       json{{"profile", "custom"}, {"label", label}});
}

Kernel::Kernel(Parts parts) {
  if (!parts.eval) throw DomainError("kernel: evaluation callback required");
  impl_ = std::make_shared<const Parts>(std::move(parts));
}

double Kernel::radial(double sigma, double rho, double x) const {
  if (impl_->radial) return impl_->radial(sigma, rho, x);
  x = std::clamp(x, -1.0, 1.0);
  return impl_->eval(Vec3(0, 0, sigma), Vec3(0, rho * std::sqrt(1.0 - x * x), rho * x));
}

double minkowski_excess_radial(double sigma, double rho, double x, double m) {
  const double ek = energy(sigma, m), ep = energy(rho, m);
  const double m2 = m * m;
  const double A = m2 / (ek + sigma) + m2 / (ep + rho);
  const double B = ek + ep + sigma + rho;
  const double s = ek + ep;
  const double d = sigma - rho;
  const double X = sigma * rho * (1.0 - x);
  return 0.5 * (d * d * A * B / (s * s) + 2.0 * X);
}

Kernel kernel_nwl(double m) {
  Kernel::Parts k;
  k.label = "nwl";
  k.mass = m;
  k.eval = [](const Vec3&, const Vec3&) { return 1.0; };
  k.radial = [](double, double, double) { return 1.0; };
  k.amplitudes = FiniteAmplitudes{{{[](double) { return 1.0; }}}};
  k.spec = json{{"family", "nwl"}, {"m", m}};
  return Kernel(std::move(k));
}

Kernel kernel_terno_moretti(double m) {
  if (!(m > 0)) throw DomainError("terno_moretti: m must be positive");
  Kernel::Parts k;
  k.label = "terno_moretti";
  k.symmetry = SymmetryClass::finite_sum;
  k.mass = m;
  const double m2 = m * m;
  k.eval = [m, m2](const Vec3& a, const Vec3& b) {
    return 0.5 * (1.0 + (m2 + a.dot(b)) / (energy(a, m) * energy(b, m)));
  };
  k.radial = [m, m2](double s, double r, double x) {
    return 0.5 * (1.0 + (m2 + s * r * x) / (energy(s, m) * energy(r, m)));
  };
  k.current = CurrentKernel([m](const Vec3& a, const Vec3& b) -> Vec3 {
    const double ea = energy(a, m), eb = energy(b, m);
    return (eb * a + ea * b) / (2.0 * ea * eb);
  });
  const double r2 = std::sqrt(0.5);
  FiniteAmplitudes amp;
  amp.terms.push_back({[r2](double) { return r2; }, [r2, m](double r) { return r2 * m / energy(r, m); }});
  amp.terms.push_back({[r2, m](double r) { return r2 * r / energy(r, m); }});
  k.amplitudes = amp;
  k.spec = json{{"family", "terno_moretti"}, {"m", m}};
  return Kernel(std::move(k));
}

Kernel kernel_tct(double m) {
  if (!(m > 0)) throw DomainError("tct: m must be positive");
  Kernel::Parts k;
  k.label = "tct";
  k.symmetry = SymmetryClass::finite_sum;
  k.mass = m;
  k.eval = [m](const Vec3& a, const Vec3& b) {
    const double ea = energy(a, m), eb = energy(b, m);
    return 0.5 * ((m + ea) * (m + eb) + a.dot(b)) / std::sqrt(ea * (m + ea) * eb * (m + eb));
  };
  k.radial = [m](double s, double r, double x) {
    const double ea = energy(s, m), eb = energy(r, m);
    return 0.5 * ((m + ea) * (m + eb) + s * r * x) / std::sqrt(ea * (m + ea) * eb * (m + eb));
  };
  FiniteAmplitudes amp;
  amp.terms.push_back({[m](double r) {
    const double e = energy(r, m);
    return std::sqrt((m + e) / (2.0 * e));
  }});
  amp.terms.push_back({[m](double r) {
    const double e = energy(r, m);
    return r / std::sqrt(2.0 * e * (m + e));
  }});
  k.amplitudes = amp;
  k.spec = json{{"family", "tct"}, {"m", m}};
  return Kernel(std::move(k));
}

Kernel kernel_causal(const RadialProfile& g) {
  if (!g.valid()) throw DomainError("causal kernel: invalid profile");
  Kernel::Parts k;
  const double m = g.mass(), m2 = m * m;
  k.label = "causal[" + g.label() + "]";
  k.symmetry = SymmetryClass::energy_prefactor_profile;
  k.mass = m;
  k.profile = g;
  k.eval = [g, m, m2](const Vec3& a, const Vec3& b) {
    const double ea = energy(a, m), eb = energy(b, m);
    return (ea + eb) / (2.0 * std::sqrt(ea * eb)) * g.at_excess(minkowski_excess(a, b, m) / m2);
  };
  k.radial = [g, m, m2](double s, double r, double x) {
    const double ea = energy(s, m), eb = energy(r, m);
    return (ea + eb) / (2.0 * std::sqrt(ea * eb)) * g.at_excess(minkowski_excess_radial(s, r, x, m) / m2);
  };
  k.current = CurrentKernel([g, m, m2](const Vec3& a, const Vec3& b) -> Vec3 {
    const double ea = energy(a, m), eb = energy(b, m);
    return g.at_excess(minkowski_excess(a, b, m) / m2) * (a + b) / (2.0 * std::sqrt(ea * eb));
  });
  k.spec = json{{"family", "causal"}, {"m", m}, {"parameters", g.parameters()}};
  return Kernel(std::move(k));
}

Kernel kernel_lorentz(const RadialProfile& g) {
  if (!g.valid()) throw DomainError("lorentz kernel: invalid profile");
  Kernel::Parts k;
  const double m = g.mass(), m2 = m * m;
  k.label = "lorentz[" + g.label() + "]";
  k.symmetry = SymmetryClass::lorentz_invariant_profile;
  k.mass = m;
  k.profile = g;
  k.eval = [g, m, m2](const Vec3& a, const Vec3& b) { return g.at_excess(minkowski_excess(a, b, m) / m2); };
  k.radial = [g, m, m2](double s, double r, double x) {
    return g.at_excess(minkowski_excess_radial(s, r, x, m) / m2);
  };
  k.spec = json{{"family", "lorentz"}, {"m", m}, {"parameters", g.parameters()}};
  return Kernel(std::move(k));
}

Kernel kernel_product(const Kernel& a, const Kernel& b) {
  const json spec{{"family", "product"}, {"m", a.mass()}, {"factors", {a.spec(), b.spec()}}};
  auto relabel = [&](Kernel k) {
    Kernel::Parts p;
    p.label = a.label() + "*" + b.label();
    p.symmetry = k.symmetry();
    p.mass = k.mass();
    p.eval = [k](const Vec3& x, const Vec3& y) { return k(x, y); };
    p.radial = [k](double s, double r, double x) { return k.radial(s, r, x); };
    p.profile = k.profile();
    p.current = k.current();
    p.amplitudes = k.amplitudes();
    p.spec = spec;
    return Kernel(std::move(p));
  };
  const auto sa = a.symmetry(), sb = b.symmetry();
  using S = SymmetryClass;
  if (sa == S::energy_prefactor_profile && sb == S::lorentz_invariant_profile)
    return relabel(kernel_causal(profile_product(*a.profile(), *b.profile())));
  if (sb == S::energy_prefactor_profile && sa == S::lorentz_invariant_profile)
    return relabel(kernel_causal(profile_product(*b.profile(), *a.profile())));
  if (sa == S::lorentz_invariant_profile && sb == S::lorentz_invariant_profile)
    return relabel(kernel_lorentz(profile_product(*a.profile(), *b.profile())));
  Kernel::Parts p;
  p.label = a.label() + "*" + b.label();
  p.symmetry = S::rotation_invariant;
  p.mass = a.mass();
  p.eval = [a, b](const Vec3& x, const Vec3& y) { return a(x, y) * b(x, y); };
  p.radial = [a, b](double s, double r, double x) { return a.radial(s, r, x) * b.radial(s, r, x); };
  p.spec = spec;
  p.normalized = a.normalized() && b.normalized();
  return Kernel(std::move(p));
}

Kernel kernel_to_shell(const Kernel& k) {
  Kernel::Parts p;
  const double m = k.mass();
  p.label = "shell[" + k.label() + "]";
  p.symmetry = k.symmetry();
  p.mass = m;
  p.eval = [k, m](const Vec3& a, const Vec3& b) { return std::sqrt(energy(a, m) * energy(b, m)) * k(a, b); };
  p.radial = [k, m](double s, double r, double x) {
    return std::sqrt(energy(s, m) * energy(r, m)) * k.radial(s, r, x);
  };
  p.spec = json{{"family", "shell"}, {"m", m}, {"base", k.spec()}};
  p.normalized = false;
  return Kernel(std::move(p));
}

Kernel kernel_from_coefficients(std::vector<CoefficientFn> coeffs, int J, const std::vector<double>& check_grid) {
  if (J < 0 || static_cast<std::size_t>(J) >= coeffs.size())
    throw DomainError("kernel_from_coefficients: truncation exceeds supplied coefficients");
  coeffs.resize(static_cast<std::size_t>(J) + 1);
  for (double r : check_grid) {
    double s = 0;
    for (const auto& c : coeffs) s += c(r, r);
    if (s > 1.0 + 1e-9)
      throw DomainError("kernel_from_coefficients: diagonal sum " + num(s) + " exceeds 1 at rho=" + num(r));
  }
  auto cs = std::make_shared<const std::vector<CoefficientFn>>(std::move(coeffs));
  Kernel::Parts p;
  p.label = "coefficients[J=" + std::to_string(J) + "]";
  p.symmetry = SymmetryClass::finite_sum;
  p.radial = [cs, J](double s, double r, double x) {
    if (!(s > 0) || !(r > 0)) throw DomainError("coefficient kernel: undefined at the origin");
    thread_local std::vector<double> P;
    legendre_all(J, std::clamp(x, -1.0, 1.0), P);
    double v = 0;
    for (int j = 0; j <= J; ++j) v += (*cs)[j](s, r) * P[j];
    return v;
  };
  auto rad = p.radial;
  p.eval = [rad](const Vec3& a, const Vec3& b) {
    const double s = a.norm(), r = b.norm();
    if (!(s > 0) || !(r > 0)) throw DomainError("coefficient kernel: undefined at the origin");
    return rad(s, r, a.dot(b) / (s * r));
  };
  p.spec = json{{"family", "coefficients"}, {"J", J}};
  return Kernel(std::move(p));
}

double tm_limit(const Vec3& k, const Vec3& p, double m) {
  return 0.5 * (1.0 + k.dot(p) / (energy(k, m) * p.norm()));
}

double tct_limit(const Vec3& k, const Vec3& p, double m) {
  const double e = energy(k, m);
  return 0.5 * std::sqrt(1.0 + m / e) + k.dot(p) / (2.0 * p.norm() * std::sqrt(e * (m + e)));
}

}  // namespace poloc
