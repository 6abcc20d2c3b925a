#include "poloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <boost/math/special_functions/erf.hpp>

#include "poloc/expansion.hpp"
#include "poloc/parallel.hpp"
#include "poloc/sobol.hpp"

namespace poloc {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(StateFamily f) {
  switch (f) {
    case StateFamily::gaussian: return "gaussian";
    case StateFamily::plss: return "plss";
    case StateFamily::custom: return "custom";
  }
  return "custom";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::automatic: return "automatic";
    case Method::tensor_quadrature: return "tensor_quadrature";
    case Method::partial_wave: return "partial_wave";
    case Method::quasi_monte_carlo: return "quasi_monte_carlo";
  }
  return "automatic";
}

StateWavepacket::StateWavepacket(StateFamily family, std::vector<Radial> parts, Vec3 axis, double envelope,
                                 double extent, double mass, json params)
    : family_(family),
      parts_(std::make_shared<const std::vector<Radial>>(std::move(parts))),
      tau_(envelope),
      extent_(extent),
      m_(mass),
      params_(std::move(params)) {
  if (parts_->empty()) throw DomainError("state: at least one zonal part required");
  if (!(envelope > 0) || !(extent > 0)) throw DomainError("state: envelope and extent must be positive");
  if (!(axis.norm() > 0)) throw DomainError("state: axis must be nonzero");
  frame_ = Eigen::Quaterniond::FromTwoVectors(Vec3(0, 0, 1), axis.normalized()).toRotationMatrix();
}

cplx StateWavepacket::radial_part(int l, double rho) const {
  if (l < 0 || l > max_l()) return 0.0;
  cplx a = (*parts_)[l](rho);
  if (t_ != 0.0) a *= std::polar(1.0, -t_ * energy(rho, m_));
  return a;
}

cplx StateWavepacket::operator()(const Vec3& p) const {
  const double rho = p.norm();
  const double x = rho > 0 ? std::clamp(axis().dot(p) / rho, -1.0, 1.0) : 1.0;
  cplx s = 0;
  double P0 = 1.0, P1 = x;
  for (int l = 0; l <= max_l(); ++l) {
    double P;
    if (l == 0) {
      P = 1.0;
    } else if (l == 1) {
      P = x;
    } else {
      P = ((2 * l - 1) * x * P1 - (l - 1) * P0) / l;
      P0 = P1;
      P1 = P;
    }
    s += (*parts_)[l](rho) * P;
  }
  double phase = 0;
  if (t_ != 0.0) phase -= t_ * energy(rho, m_);
  if (b_.squaredNorm() > 0) phase -= b_.dot(p);
  return phase == 0.0 ? s : s * std::polar(1.0, phase);
}

StateWavepacket StateWavepacket::translated(const Vec3& b) const {
  StateWavepacket out = *this;
  out.b_ = b_ + b;
  return out;
}

StateWavepacket StateWavepacket::rotated(const Eigen::Matrix3d& R) const {
  StateWavepacket out = *this;
  out.frame_ = R * frame_;
  out.b_ = R * b_;
  return out;
}

StateWavepacket StateWavepacket::with_time(double t) const {
  StateWavepacket out = *this;
  out.t_ = t;
  return out;
}

double StateWavepacket::norm_squared() const {
  const GaussRule rule = panel_gauss(0.0, extent_, std::min(0.25, extent_ / 100.0), 8);
  double s = 0;
  for (int l = 0; l <= max_l(); ++l) {
    double sl = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = rule.nodes[i];
      sl += rule.weights[i] * r * r * std::norm((*parts_)[l](r));
    }
    s += 4.0 * kPi / (2 * l + 1) * sl;
  }
  return s;
}

StateWavepacket gaussian_state(double s, const Vec3& b, double m) {
  if (!(s > 0)) throw DomainError("gaussian_state: width must be positive");
  const double c = std::pow(kPi, -0.75) * std::pow(s, 1.5);
  StateWavepacket::Radial a0 = [c, s](double r) { return cplx(c * std::exp(-0.5 * s * s * r * r), 0.0); };
  StateWavepacket st(StateFamily::gaussian, {a0}, Vec3(0, 0, 1), 1.0 / s, 8.6 / s, m,
                     json{{"family", "gaussian"}, {"s", s}});
  return b.squaredNorm() > 0 ? st.translated(b) : st;
}

StateWavepacket custom_state(std::vector<StateWavepacket::Radial> parts, const Vec3& axis, double envelope,
                             double extent, double m) {
  return StateWavepacket(StateFamily::custom, std::move(parts), axis, envelope, extent, m,
                         json{{"family", "custom"}});
}

StateWavepacket plss_state(const Kernel& K, const Vec3& k0, const Vec3& b, double n, int max_l) {
  const double sigma = k0.norm();
  if (!(sigma > 0)) throw DomainError("plss_state: k0 must be nonzero");
  if (!(n > 0)) throw DomainError("plss_state: n must be positive");
  std::vector<std::function<double(double)>> kj;
  if (K.amplitudes()) {
    const FiniteAmplitudes amp = *K.amplitudes();
    for (int j = 0; j <= amp.max_order(); ++j)
      kj.push_back([amp, j, sigma](double r) {
        double v = 0;
        for (const auto& e : amp.terms[j]) v += e(sigma) * e(r);
        return v;
      });
  } else {
    auto c = std::make_shared<LegendreCoefficients>(extract_coefficients(K, max_l, {}, 2 * max_l + 48));
    for (int j = 0; j <= max_l; ++j) kj.push_back([c, j, sigma](double r) { return (*c)(j, sigma, r); });
  }
  const double inv_n2 = 1.0 / (n * n);
  std::vector<StateWavepacket::Radial> raw;
  for (const auto& f : kj) raw.push_back([f, inv_n2](double r) { return cplx(std::exp(-r * r * inv_n2) * f(r), 0.0); });
  const double extent = 6.1 * n + 2.0;
  const StateWavepacket unnormalized(StateFamily::plss, raw, k0, n / std::sqrt(2.0), extent, K.mass(), {});
  const double nrm = unnormalized.norm_squared();
  if (!(nrm > 0) || !std::isfinite(nrm)) throw DomainError("plss_state: degenerate normalization");
  const double cn = 1.0 / std::sqrt(nrm);
  std::vector<StateWavepacket::Radial> parts;
  for (const auto& f : raw) parts.push_back([f, cn](double r) { return cn * f(r); });
  StateWavepacket st(StateFamily::plss, parts, k0, n / std::sqrt(2.0), extent, K.mass(),
                     json{{"family", "plss"}, {"n", n}, {"k0", {k0.x(), k0.y(), k0.z()}}, {"c_n", cn}});
  return b.squaredNorm() > 0 ? st.translated(b) : st;
}

StateWavepacket evolve(const StateWavepacket& phi, double t) { return phi.with_time(phi.time() + t); }

StateWavepacket dilate(const StateWavepacket& phi, double m) {
  if (!(m > 0)) throw DomainError("dilate: m must be positive");
  if (phi.time() != 0.0) throw DomainError("dilate: evolved states are not supported");
  std::vector<StateWavepacket::Radial> parts;
  const double f = std::pow(m, 1.5);
  for (int l = 0; l <= phi.max_l(); ++l) parts.push_back([phi, l, m, f](double r) { return f * phi.radial_part(l, m * r); });
  json params = phi.params();
  params["dilation"] = m;
  StateWavepacket out(phi.family(), parts, phi.axis(), phi.envelope() / m, phi.extent() / m, phi.mass() / m, params);
  out = out.rotated(phi.frame() * Eigen::Quaterniond::FromTwoVectors(Vec3(0, 0, 1), phi.axis()).toRotationMatrix().transpose());
  return phi.center().squaredNorm() > 0 ? out.translated(m * phi.center()) : out;
}

BallRegion::BallRegion(const Vec3& c, double r) : center(c), radius(r) {
  if (!(r > 0)) throw DomainError("ball: radius must be positive");
}

double ball_form_factor(double q, double R) {
  if (q < 0) throw DomainError("ball_form_factor: q must be nonnegative");
  const double x = q * R;
  // 4 pi R^3 j_1(x)/x
  // series term n: (-1)^n x^{2n} / ((2n+3)(2n+1)!); the direct form cancels below 0.3
  if (x < 0.3) {
    const double x2 = x * x;
    return 4.0 * kPi * R * R * R *
           (1.0 / 3.0 +
            x2 * (-1.0 / 30.0 + x2 * (1.0 / 840.0 + x2 * (-1.0 / 45360.0 + x2 * (1.0 / 3991680.0 - x2 / 518918400.0)))));
  }
  return 4.0 * kPi * (std::sin(x) - x * std::cos(x)) / (q * q * q);
}

// ----------------------------------------------------------------------------
// tensor path

namespace {

double radial_width(double R, double resolution, double frequency = 0.0) {
  return std::min(0.5, 2.5 / (R + frequency)) / resolution;
}
double q_width(double R, double resolution) { return 2.5 / (R * resolution); }

}  // namespace

BallOperator::BallOperator(const Kernel& K, double R, double rho_max, int L, double resolution, bool parallel,
                           double frequency)
    : R_(R), rho_max_(rho_max) {
  if (!(R > 0) || !(rho_max > 0) || L < 0 || frequency < 0) throw DomainError("BallOperator: bad parameters");
  const GaussRule rule = panel_gauss(0.0, rho_max, radial_width(R, resolution, frequency), 8);
  nodes_ = rule.nodes;
  weights_ = rule.weights;
  const std::size_t n = nodes_.size();
  M_.assign(L + 1, Eigen::MatrixXd::Zero(n, n));
  const auto base = gauss_legendre(8);
  const double wq = q_width(R, resolution);
  std::vector<std::uint64_t> counts(n, 0);
  parallel_for(
      n,
      [&](std::size_t i) {
        std::vector<double> acc(L + 1);
        const double s = nodes_[i];
        for (std::size_t k = i; k < n; ++k) {
          const double r = nodes_[k];
          const double lo = std::abs(s - r), hi = s + r;
          const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / wq)));
          const double h = (hi - lo) / panels;
          std::fill(acc.begin(), acc.end(), 0.0);
          const double inv = 1.0 / (s * r);
          for (int pnl = 0; pnl < panels; ++pnl) {
            const double a = lo + pnl * h;
            for (int g = 0; g < 8; ++g) {
              const double q = a + 0.5 * h * (base->nodes[g] + 1.0);
              const double x = std::clamp((s * s + r * r - q * q) * 0.5 * inv, -1.0, 1.0);
              const double f = 0.5 * h * base->weights[g] * K.radial(s, r, x) * ball_form_factor(q, R) * q * inv;
              double P0 = 1.0, P1 = x;
              acc[0] += f;
              if (L >= 1) acc[1] += f * x;
              for (int l = 2; l <= L; ++l) {
                const double P2 = ((2 * l - 1) * x * P1 - (l - 1) * P0) / l;
                acc[l] += f * P2;
                P0 = P1;
                P1 = P2;
              }
            }
          }
          counts[i] += static_cast<std::uint64_t>(panels) * 8;
          const double scale = weights_[i] * weights_[k] * s * s * r * r;
          for (int l = 0; l <= L; ++l) {
            M_[l](i, k) = scale * acc[l];
            M_[l](k, i) = scale * acc[l];
          }
        }
      },
      parallel);
  for (auto c : counts) evals_ += c;
}

double BallOperator::apply(const StateWavepacket& phi) const {
  if (phi.max_l() > max_l()) throw DomainError("BallOperator: state has more zonal orders than the operator");
  const std::size_t n = nodes_.size();
  double P = 0;
  for (int l = 0; l <= phi.max_l(); ++l) {
    Eigen::VectorXcd a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = phi.radial_part(l, nodes_[i]);
    const cplx v = a.dot(M_[l] * a);  // conj(a) . M a
    P += v.real() / (kPi * (2 * l + 1));
  }
  return P;
}

double BallOperator::bilinear(int l, const std::function<double(double)>& f,
                              const std::function<double(double)>& g) const {
  const std::size_t n = nodes_.size();
  Eigen::VectorXd a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = f(nodes_[i]);
    b[i] = g(nodes_[i]);
  }
  return a.dot(M_.at(l) * b) / (kPi * (2 * l + 1));
}

namespace {

// operators are reused across states with equal extent and order
std::shared_ptr<const BallOperator> cached_operator(const Kernel& K, double R, double rho_max, int L,
                                                    double resolution, bool parallel, std::uint64_t budget,
                                                    double frequency) {
  using Key = std::tuple<const void*, double, double, int, double, double>;
  struct Entry {
    Kernel keep;
    std::shared_ptr<const BallOperator> op;
  };
  static std::mutex mu;
  static std::map<Key, Entry> cache;
  static std::vector<Key> order;
  const Key key{K.id(), R, rho_max, L, resolution, frequency};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.op;
  }
  // rough evaluation count before committing
  const double nr = std::ceil(rho_max / radial_width(R, resolution, frequency)) * 8.0;
  const double est = 0.5 * nr * nr * (rho_max * 2.0 / 3.0 / q_width(R, resolution) + 1.0) * 8.0;
  if (est > static_cast<double>(budget))
    throw DomainError("probability: tensor quadrature budget exceeded (" + std::to_string(est) + " evaluations)");
  auto op = std::make_shared<const BallOperator>(K, R, rho_max, L, resolution, parallel, frequency);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, Entry{K, op});
  order.push_back(key);
  if (order.size() > 24) {
    cache.erase(order.front());
    order.erase(order.begin());
  }
  return op;
}

}  // namespace

LocalizationProbability tensor_probability(const Kernel& K, const StateWavepacket& phi, double R,
                                           const ProbabilityOptions& opt) {
  LocalizationProbability out;
  out.method = Method::tensor_quadrature;
  const int L = phi.max_l();
  const double f = std::abs(phi.time());
  auto op1 = cached_operator(K, R, phi.extent(), L, opt.resolution, opt.parallel, opt.budget, f);
  const double v1 = op1->apply(phi);
  if (!opt.refine) {
    out.value = v1;
    out.error = 0;
    return out;
  }
  auto op2 = cached_operator(K, R, phi.extent(), L, 1.5 * opt.resolution, opt.parallel, opt.budget, f);
  const double v2 = op2->apply(phi);
  out.value = v2;
  out.error = std::abs(v2 - v1) + 1e-13;
  return out;
}

// ----------------------------------------------------------------------------
// quasi Monte Carlo

LocalizationProbability qmc_probability(const Kernel& K, const StateWavepacket& phi, const BallRegion& ball,
                                        const ProbabilityOptions& opt) {
  const int nr = std::max(2, opt.qmc_randomizations);
  const std::uint64_t per = std::max<std::uint64_t>(1, opt.qmc_points / nr);
  const double tau = phi.envelope();
  const Eigen::Matrix3d F = phi.frame();
  const Vec3 c = ball.center;
  const double R = ball.radius;
  const double norm_h = std::pow(2.0 * kPi * tau * tau, -1.5);
  const double pref = 1.0 / std::pow(2.0 * kPi, 3);
  std::vector<double> est(nr, 0.0);
  parallel_for(
      static_cast<std::size_t>(nr),
      [&](std::size_t r) {
        // splitmix64 of (seed, r) as the shift seed
        std::uint64_t z = opt.seed * 0x9E3779B97F4A7C15ULL + (r + 1) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        Sobol sob(6, z | 1ULL);
        double u[6];
        double sum = 0;
        for (std::uint64_t i = 0; i < per; ++i) {
          sob.next(u);
          double g[6];
          for (int d = 0; d < 6; ++d) g[d] = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u[d]);
          const Vec3 k = tau * (F * Vec3(g[0], g[1], g[2]));
          const Vec3 p = tau * (F * Vec3(g[3], g[4], g[5]));
          const double hk = norm_h * std::exp(-0.5 * (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]));
          const double hp = norm_h * std::exp(-0.5 * (g[3] * g[3] + g[4] * g[4] + g[5] * g[5]));
          const cplx amp = std::conj(phi(k)) * phi(p) * std::polar(1.0, (p - k).dot(c));
          sum += K(k, p) * ball_form_factor((p - k).norm(), R) * amp.real() / (hk * hp);
        }
        est[r] = pref * sum / static_cast<double>(per);
      },
      opt.parallel);
  double mean = 0;
  for (double e : est) mean += e;
  mean /= nr;
  double var = 0;
  for (double e : est) var += (e - mean) * (e - mean);
  var /= (nr - 1);
  LocalizationProbability out;
  out.method = Method::quasi_monte_carlo;
  out.value = mean;
  out.error = std::sqrt(var / nr);
  return out;
}

// ----------------------------------------------------------------------------

LocalizationProbability probability(const Kernel& K, const StateWavepacket& phi, const BallRegion& ball,
                                    const ProbabilityOptions& opt) {
  if (K.symmetry() == SymmetryClass::one_dimensional) throw DomainError("probability: kernel is one-dimensional");
  const Vec3 rel = ball.center - phi.center();
  const bool concentric = rel.norm() <= 1e-14 * (1.0 + ball.center.norm());
  Method m = opt.method;
  if (m == Method::automatic) {
    if (!concentric) {
      m = Method::quasi_monte_carlo;
    } else if (K.amplitudes() && K.amplitudes()->max_order() <= 1 && phi.max_l() <= 1) {
      m = Method::partial_wave;
    } else {
      m = Method::tensor_quadrature;
    }
  }
  if (m != Method::quasi_monte_carlo && !concentric)
    throw DomainError("probability: zonal paths need the ball centred on the state");
  const StateWavepacket centred = phi.center().squaredNorm() > 0 ? phi.translated(-phi.center()) : phi;
  switch (m) {
    case Method::tensor_quadrature: return tensor_probability(K, centred, ball.radius, opt);
    case Method::partial_wave: return partial_wave_probability(K, centred, ball.radius, opt);
    default: return qmc_probability(K, phi, ball, opt);
  }
}

CtMargin ct_inequality(const Kernel& K, const StateWavepacket& phi, const BallRegion& ball, double t,
                       const ProbabilityOptions& opt) {
  CtMargin r;
  r.grown = probability(K, phi, BallRegion(ball.center, ball.radius + std::abs(t)), opt);
  r.evolved = probability(K, evolve(phi, -t), ball, opt);
  r.margin = r.grown.value - r.evolved.value;
  r.error = r.grown.error + r.evolved.error;
  return r;
}

std::vector<LocalizationProbability> plss_sequence(const Kernel& K, const Vec3& k0, const Vec3& b,
                                                   const BallRegion& ball, std::span<const double> ns,
                                                   const ProbabilityOptions& opt) {
  std::vector<LocalizationProbability> out;
  const int L = K.amplitudes() ? K.amplitudes()->max_order() : 16;
  for (double n : ns) out.push_back(probability(K, plss_state(K, k0, b, n, L), ball, opt));
  return out;
}

MassScaling mass_scaling_check(const KernelFamily& family, double m, const BallRegion& ball,
                               const StateWavepacket& phi, const ProbabilityOptions& opt) {
  if (!(m > 0)) throw DomainError("mass_scaling_check: m must be positive");
  MassScaling r;
  r.lhs = probability(family(m), phi, ball, opt);
  r.rhs = probability(family(1.0), dilate(phi, m), BallRegion(m * ball.center, m * ball.radius), opt);
  r.residual = std::abs(r.lhs.value - r.rhs.value);
  r.error = r.lhs.error + r.rhs.error;
  return r;
}

MassScaling mass_scaling_check(const RadialProfile& g, double m, const BallRegion& ball,
                               const StateWavepacket& phi, const ProbabilityOptions& opt) {
  return mass_scaling_check([g](double mm) { return kernel_causal(g.with_mass(mm)); }, m, ball, phi, opt);
}

json to_json(const LocalizationProbability& p) {
  return json{{"value", p.value}, {"error", p.error}, {"method", to_string(p.method)}};
}

}  // namespace poloc
