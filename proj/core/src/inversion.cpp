#include "poloc/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>

#include "poloc/parallel.hpp"

namespace poloc {

double WeightFunction::operator()(double l) const {
  if (lambda.size() < 4 || l < lambda.front() || l > lambda.back()) return 0.0;
  // four-point Lagrange on the uniform grid
  const double h = step();
  const double pos = (l - lambda.front()) / h;
  const std::size_t n = lambda.size();
  const std::size_t i0 = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(pos) - 1, 0, n - 4);
  const double t = pos - static_cast<double>(i0);
  double v = 0;
  for (int a = 0; a < 4; ++a) {
    double c = 1;
    for (int b = 0; b < 4; ++b)
      if (b != a) c *= (t - b) / (a - b);
    v += c * w[i0 + a];
  }
  return v;
}

WeightFunction WeightFunction::tabulate(const std::function<double(double)>& f, double lambda_max, int points,
                                        std::string source) {
  WeightFunction out;
  out.source = std::move(source);
  for (int i = 0; i < points; ++i) {
    const double l = lambda_max * i / (points - 1);
    out.lambda.push_back(l);
    out.w.push_back(f(l));
  }
  const double h = out.step();
  double s = 0;
  for (std::size_t i = 0; i < out.w.size(); ++i) s += h * out.w[i] * ((i == 0 || i + 1 == out.w.size()) ? 0.5 : 1.0);
  out.normalization = s;
  return out;
}

bool in_principal_class(const RadialProfile& g, double kappa_max, int points) {
  for (int i = 1; i <= points; ++i) {
    const double k = kappa_max * i / points;
    if (std::abs(g.at_rapidity(k)) > (1.0 + 1e-9) / sinhc(k)) return false;
  }
  return true;
}

std::function<double(double)> psi_of(const RadialProfile& g) {
  if (!in_principal_class(g))
    throw DomainError("psi_of: |g(t)| exceeds kappa/sinh(kappa); profile " + g.label() +
                      " has supplementary content");
  std::function<double(double)> psi;
  if (g.has_derivative()) {
    const double m2 = g.mass() * g.mass();
    psi = [g, m2](double x) {
      x = std::abs(x);
      const double s = std::sinh(0.5 * x);
      const double u = 2.0 * s * s;  // cosh x - 1
      const double sh = std::sinh(x);
      // derivative in unit-mass variables
      const double dg = g.derivative(m2 * (1.0 + u)) * m2;
      return std::cosh(x) * g.at_excess(u) + sh * sh * dg;
    };
  } else {
    psi = [g](double x) {
      x = std::abs(x);
      auto F = [&g](double y) { return std::sinh(y) * g.at_rapidity(std::abs(y)); };
      const double h = 1e-3;
      auto D = [&](double hh) { return (F(x + hh) - F(x - hh)) / (2.0 * hh); };
      const double d1 = D(h), d2 = D(h / 2), d3 = D(h / 4);
      const double r1 = (4 * d2 - d1) / 3, r2 = (4 * d3 - d2) / 3;
      return (16 * r2 - r1) / 15;
    };
  }
  if (std::abs(psi(0.0) - 1.0) > 1e-6) throw DomainError("psi_of: psi(0) differs from 1");
  return psi;
}

WeightFunction invert(const RadialProfile& g, const InversionOptions& opt) {
  const auto psi = psi_of(g);
  double X = opt.X0;
  while (!(std::abs(psi(X)) < opt.psi_tail && std::abs(psi(X - 1.0)) < 10 * opt.psi_tail)) {
    X += 10.0;
    if (X > opt.X_max)
      throw DomainError("invert: psi does not decay (atomic or non-integrable principal measure) for " + g.label());
  }
  // 10-point panels of width 0.25: at lambda = 12 that is ~20 points per period
  const GaussRule rule = panel_gauss(0.0, X, 0.25, 10);
  const std::size_t nq = rule.size();
  std::vector<double> fx(nq), fneg(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    fx[q] = rule.weights[q] * psi(rule.nodes[q]);
    fneg[q] = rule.weights[q] * psi(-rule.nodes[q]);
  }
  WeightFunction out;
  out.source = g.label();
  out.truncation = X;
  out.lambda.resize(opt.points);
  out.w.resize(opt.points);
  std::vector<double> imag(opt.points, 0.0);
  parallel_for(static_cast<std::size_t>(opt.points), [&](std::size_t i) {
    const double l = opt.lambda_max * static_cast<double>(i) / (opt.points - 1);
    double re = 0, im = 0;
    for (std::size_t q = 0; q < nq; ++q) {
      const double c = std::cos(l * rule.nodes[q]);
      re += (fx[q] + fneg[q]) * c;
    }
    if (i % 64 == 0)
      for (std::size_t q = 0; q < nq; ++q) im += (fneg[q] - fx[q]) * std::sin(l * rule.nodes[q]);
    out.lambda[i] = l;
    // w = (1/pi) int_{-X}^{X} psi e^{-i l x} dx
    out.w[i] = re / std::numbers::pi;
    imag[i] = im / std::numbers::pi;
  });
  for (double v : imag) out.max_imag = std::max(out.max_imag, std::abs(v));
  const double h = out.step();
  double s = 0;
  for (std::size_t i = 0; i < out.w.size(); ++i) {
    if (out.w[i] < -opt.negativity_tol)
      throw DomainError("invert: weight negative beyond tolerance at lambda=" + std::to_string(out.lambda[i]));
    s += h * out.w[i] * ((i == 0 || i + 1 == out.w.size()) ? 0.5 : 1.0);
  }
  out.normalization = s;
  if (std::abs(s - 1.0) > opt.normalization_tol)
    throw DomainError("invert: weight integrates to " + std::to_string(s));
  return out;
}

std::vector<double> forward(const WeightFunction& w, std::span<const double> t_grid) {
  const double h = w.step();
  const std::size_t n = w.w.size();
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t < 1.0 - 1e-12) throw DomainError("forward: t below 1");
    const double kappa = rapidity(std::max(t, 1.0));
    const double den = sinhc(kappa);
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      // sin(l kappa)/(l sinh kappa) = sinc(l kappa)/sinhc(kappa)
      s += c * w.w[i] * sinc(w.lambda[i] * kappa);
    }
    out.push_back(h * s / den);
  }
  return out;
}

GramReport positive_type_check(const std::function<double(double)>& psi, std::span<const double> xs) {
  return gram_test([&psi](double x, double y) { return psi(x - y); }, xs);
}

GramReport psi_positive_type_check(const RadialProfile& g, std::span<const double> xs) {
  GramReport r = positive_type_check(psi_of(g), xs);
  r.label = "psi[" + g.label() + "]";
  return r;
}

void write_weight_csv(std::ostream& os, const WeightFunction& w) {
  os << "lambda,w,abs_err_bound\n";
  os.precision(17);
  for (std::size_t i = 0; i < w.w.size(); ++i) os << w.lambda[i] << ',' << w.w[i] << ",1e-8\n";
}

json to_json(const WeightFunction& w, bool with_values) {
  json j{{"source", w.source}, {"points", w.w.size()}, {"lambda_max", w.lambda.empty() ? 0.0 : w.lambda.back()},
         {"normalization", w.normalization}, {"truncation", w.truncation}, {"max_imag", w.max_imag}};
  if (with_values) {
    j["lambda"] = w.lambda;
    j["w"] = w.w;
  }
  return j;
}

}  // namespace poloc
