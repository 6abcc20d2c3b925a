#include "poloc/specfun.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace poloc {

double rapidity_from_excess(double e) {
  if (e < 0) {
    if (e < -1e-12) throw DomainError("rapidity: argument below 1");
    e = 0;
  }
  return std::log1p(e + std::sqrt(e * (e + 2.0)));
}

double rapidity(double t) { return rapidity_from_excess(t - 1.0); }

double minkowski_excess(const Vec3& k, const Vec3& p, double m) {
  const double a = k.norm(), b = p.norm();
  const double ek = energy(a, m), ep = energy(b, m);
  const double dot = k.dot(p);
  // |k||p| - k.p, via the cross product when the angle is small
  double x;
  if (dot > 0) {
    x = k.cross(p).squaredNorm() / (a * b + dot);
  } else {
    x = a * b - dot;
  }
  const double m2 = m * m;
  const double A = m2 / (ek + a) + m2 / (ep + b);
  const double B = ek + ep + a + b;
  const double s = ek + ep;
  const double d = a - b;
  return 0.5 * (d * d * A * B / (s * s) + 2.0 * x);
}

double minkowski_excess_1d(double k, double p, double m) {
  return minkowski_excess(Vec3(0, 0, k), Vec3(0, 0, p), m);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double sinhc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

double legendre_p(int j, double x) {
  if (j < 0) throw DomainError("legendre_p: negative degree");
  if (std::abs(x) > 1.0 + 1e-12) throw DomainError("legendre_p: |x| > 1");
  x = std::clamp(x, -1.0, 1.0);
  if (j == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int n = 1; n < j; ++n) {
    const double p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void legendre_all(int J, double x, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(J) + 1);
  out[0] = 1.0;
  if (J == 0) return;
  out[1] = x;
  for (int n = 1; n < J; ++n) out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1);
}

double gegenbauer_c(int n, double r, double x) {
  if (r <= 0) throw DomainError("gegenbauer_c: r must be positive");
  if (n < 0) throw DomainError("gegenbauer_c: negative degree");
  if (std::abs(x) > 1.0 + 1e-12) throw DomainError("gegenbauer_c: |x| > 1");
  x = std::clamp(x, -1.0, 1.0);
  if (n == 0) return 1.0;
  double c0 = 1.0, c1 = 2.0 * r * x;
  for (int k = 1; k < n; ++k) {
    const double c2 = (2.0 * (k + r) * x * c1 - (k + 2.0 * r - 1.0) * c0) / (k + 1);
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

namespace {

// power series x^l sum_k (-x^2/2)^k / (k! (2l+2k+1)!!)
double sph_j_series(int l, double x) {
  double dfact = 1.0;
  for (int i = 1; i <= 2 * l + 1; i += 2) dfact *= i;
  double term = std::pow(x, l) / dfact;
  double sum = term;
  const double y = -0.5 * x * x;
  for (int k = 1; k < 40; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double sph_j(int l, double x) {
  if (l < 0) throw DomainError("sph_j: negative order");
  const double ax = std::abs(x);
  if (ax < 1.0 + 0.5 * l) {
    const double v = sph_j_series(l, ax);
    return (x < 0 && (l % 2)) ? -v : v;
  }
  const double s = std::sin(x), c = std::cos(x);
  switch (l) {
    case 0: return s / x;
    case 1: return (s / x - c) / x;
    case 2: return ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x) / x;
    default: {
      const double v = std::sph_bessel(static_cast<unsigned>(l), ax);
      return (x < 0 && (l % 2)) ? -v : v;
    }
  }
}

double sph_j_prime(int l, double x) {
  if (l == 0) return -sph_j(1, x);
  // j_l' = (l j_{l-1} - (l+1) j_{l+1}) / (2l+1), no division by x
  return (l * sph_j(l - 1, x) - (l + 1) * sph_j(l + 1, x)) / (2.0 * l + 1.0);
}

GaussRule gauss_legendre_nodes(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  GaussRule r;
  const int n = order;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-16) break;
    }
    // one more derivative evaluation at the converged node
    {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2) r.nodes[n / 2] = 0.0;
  return r;
}

std::shared_ptr<const GaussRule> gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const GaussRule>(gauss_legendre_nodes(order));
  cache.emplace(order, rule);
  return rule;
}

GaussRule composite_gauss(double a, double b, int panels, int order) {
  GaussRule out;
  if (panels <= 0 || b <= a) return out;
  const auto base = gauss_legendre(order);
  const double h = (b - a) / panels;
  out.nodes.reserve(static_cast<std::size_t>(panels) * order);
  out.weights.reserve(out.nodes.capacity());
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    for (std::size_t i = 0; i < base->size(); ++i) {
      out.nodes.push_back(lo + 0.5 * h * (base->nodes[i] + 1.0));
      out.weights.push_back(0.5 * h * base->weights[i]);
    }
  }
  return out;
}

GaussRule panel_gauss(double a, double b, double width, int order) {
  if (b <= a) return {};
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width - 1e-9)));
  return composite_gauss(a, b, panels, order);
}

GaussRule join(const GaussRule& a, const GaussRule& b) {
  GaussRule out = a;
  out.nodes.insert(out.nodes.end(), b.nodes.begin(), b.nodes.end());
  out.weights.insert(out.weights.end(), b.weights.begin(), b.weights.end());
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol, double* error) {
  if (a == b) {
    if (error) *error = 0;
    return 0.0;
  }
  double err = 0, l1 = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol,
                                                                                 &err, &l1);
  if (error) *error = err;
  if (!(err <= std::max(abs_tol, 100.0 * rel_tol * l1)) || !std::isfinite(v))
    throw DomainError("integrate: requested tolerance not reached");
  return v;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double rel_tol,
                             double* error) {
  boost::math::quadrature::exp_sinh<double> es;
  double err = 0, l1 = 0;
  auto g = [&](double u) { return f(a + u); };
  const double v = es.integrate(g, rel_tol, &err, &l1);
  if (error) *error = err;
  if (!std::isfinite(v)) throw DomainError("integrate_to_infinity: non-finite result");
  return v;
}

}  // namespace poloc
