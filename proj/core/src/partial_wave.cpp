#include <algorithm>
#include <cmath>

#include "partial_wave_detail.hpp"
#include "poloc/localization.hpp"

namespace poloc {

namespace detail {

GaussRule rho_rule(double extent, double R, double frequency, double resolution) {
  return panel_gauss(0.0, extent, std::min(0.5, 2.5 / (R + frequency)) / resolution, 8);
}

GaussRule r_rule(double extent, double R, double resolution) {
  return panel_gauss(0.0, R, std::min(0.5, 2.5 / extent) / resolution, 8);
}

Transform hankel(const FiniteAmplitudes& amp, int l, const std::function<std::complex<double>(double)>& a,
                 const GaussRule& rho_rule, const GaussRule& r_rule, double rho_cut) {
  if (amp.max_order() > 1) throw DomainError("partial wave: kernel orders above 1 are not supported");
  Transform t;
  t.l = l;
  std::size_t n = 0;
  while (n < rho_rule.size() && rho_rule.nodes[n] <= rho_cut) ++n;
  const std::size_t nr = r_rule.size();
  std::vector<std::complex<double>> base(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = rho_rule.nodes[i];
    base[i] = rho_rule.weights[i] * rho * rho * a(rho);
  }
  auto weighted = [&](const std::function<double(double)>& e, bool over_rho) {
    std::vector<std::complex<double>> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = rho_rule.nodes[i];
      w[i] = base[i] * (over_rho ? e(rho) / rho : e(rho));
    }
    return w;
  };
  std::vector<std::vector<std::complex<double>>> w0, w1;
  for (const auto& e : amp.terms[0]) w0.push_back(weighted(e, false));
  if (amp.max_order() >= 1)
    for (const auto& e : amp.terms[1]) w1.push_back(weighted(e, false));
  t.h0.assign(w0.size(), std::vector<std::complex<double>>(nr));
  t.h1.assign(w1.size(), std::vector<std::complex<double>>(nr));
  t.d1.assign(w1.size(), std::vector<std::complex<double>>(nr));
  std::vector<double> jl(n), djl(n), inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / rho_rule.nodes[i];
  for (std::size_t k = 0; k < nr; ++k) {
    const double r = r_rule.nodes[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rho_rule.nodes[i] * r;
      jl[i] = sph_j(l, x);
      if (!w1.empty()) djl[i] = sph_j_prime(l, x);
    }
    for (std::size_t a = 0; a < w0.size(); ++a) {
      std::complex<double> s = 0;
      for (std::size_t i = 0; i < n; ++i) s += w0[a][i] * jl[i];
      t.h0[a][k] = s;
    }
    for (std::size_t a = 0; a < w1.size(); ++a) {
      std::complex<double> sh = 0, sd = 0;
      for (std::size_t i = 0; i < n; ++i) {
        sh += w1[a][i] * inv[i] * jl[i];
        sd += w1[a][i] * djl[i];
      }
      t.h1[a][k] = sh;
      t.d1[a][k] = sd;
    }
  }
  return t;
}

std::complex<double> pair(const Transform& u, const Transform& v, const GaussRule& r_rule) {
  if (u.l != v.l) return 0.0;
  const double ll = u.l * (u.l + 1.0);
  std::complex<double> s = 0;
  for (std::size_t k = 0; k < r_rule.size(); ++k) {
    const double r = r_rule.nodes[k];
    std::complex<double> acc = 0;
    for (std::size_t a = 0; a < u.h0.size(); ++a) acc += r * r * std::conj(u.h0[a][k]) * v.h0[a][k];
    for (std::size_t a = 0; a < u.h1.size(); ++a)
      acc += r * r * std::conj(u.d1[a][k]) * v.d1[a][k] + ll * std::conj(u.h1[a][k]) * v.h1[a][k];
    s += r_rule.weights[k] * acc;
  }
  return 8.0 / (2 * u.l + 1) * s;
}

}  // namespace detail

namespace {

double partial_wave_value(const FiniteAmplitudes& amp, const StateWavepacket& phi, double R, double resolution) {
  const double f = std::abs(phi.time());
  const GaussRule rho = detail::rho_rule(phi.extent(), R, f, resolution);
  const GaussRule rr = detail::r_rule(phi.extent(), R, resolution);
  double P = 0;
  for (int l = 0; l <= phi.max_l(); ++l) {
    const auto t = detail::hankel(amp, l, [&](double p) { return phi.radial_part(l, p); }, rho, rr, phi.extent());
    P += detail::pair(t, t, rr).real();
  }
  return P;
}

}  // namespace

LocalizationProbability partial_wave_probability(const Kernel& K, const StateWavepacket& phi, double R,
                                                 const ProbabilityOptions& opt) {
  if (!K.amplitudes()) throw DomainError("partial wave: kernel has no finite amplitude expansion");
  if (!(R > 0)) throw DomainError("partial wave: radius must be positive");
  LocalizationProbability out;
  out.method = Method::partial_wave;
  const double v1 = partial_wave_value(*K.amplitudes(), phi, R, opt.resolution);
  if (!opt.refine) {
    out.value = v1;
    return out;
  }
  const double v2 = partial_wave_value(*K.amplitudes(), phi, R, 1.5 * opt.resolution);
  out.value = v2;
  out.error = std::abs(v2 - v1) + 1e-13;
  return out;
}

}  // namespace poloc
