#include "poloc/pd.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "poloc/expansion.hpp"
#include "poloc/kinematics.hpp"
#include "poloc/parallel.hpp"

namespace poloc {

std::string to_string(Verdict v) { return v == Verdict::violated ? "violated" : "pd_on_sample"; }

GramReport analyze_gram(const Eigen::MatrixXd& M, double tol) {
  GramReport r;
  r.tol = tol;
  r.gram = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.gram);
  if (es.info() != Eigen::Success) throw DomainError("gram: eigen-solver failed");
  r.spectrum = es.eigenvalues();
  const Eigen::Index n = r.spectrum.size();
  r.min_eigenvalue = r.spectrum[0];
  r.spectral_norm = std::max(std::abs(r.spectrum[0]), std::abs(r.spectrum[n - 1]));
  r.relative_min_eigenvalue = r.spectral_norm > 0 ? r.min_eigenvalue / r.spectral_norm : 0.0;
  r.worst_vector = es.eigenvectors().col(0);
  r.quadratic_form = r.worst_vector.dot(r.gram * r.worst_vector);
  r.verdict = r.min_eigenvalue < -tol * r.spectral_norm ? Verdict::violated : Verdict::pd_on_sample;
  return r;
}

GramReport gram_test(const Kernel& K, std::span<const Vec3> points, double tol) {
  const std::size_t n = points.size();
  if (n == 0 || n > 500) throw DomainError("gram_test: need 1..500 points");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if ((points[a] - points[b]).norm() < 1e-14) throw DomainError("gram_test: duplicate points");
  Eigen::MatrixXd M(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      const double v = K(points[a], points[b]);
      if (!std::isfinite(v)) throw DomainError("gram_test: kernel evaluation failed");
      M(a, b) = v;
      M(b, a) = K(points[b], points[a]);
    }
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-13) throw DomainError("gram_test: kernel not Hermitian");
  GramReport r = analyze_gram(M, tol);
  r.label = K.label();
  r.points.assign(points.begin(), points.end());
  return r;
}

GramReport gram_test(const std::function<double(double, double)>& k, std::span<const double> xs, double tol) {
  const std::size_t n = xs.size();
  if (n == 0 || n > 500) throw DomainError("gram_test: need 1..500 points");
  Eigen::MatrixXd M(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) M(a, b) = k(xs[a], xs[b]);
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-13) throw DomainError("gram_test: kernel not symmetric");
  GramReport r = analyze_gram(M, tol);
  r.scalars.assign(xs.begin(), xs.end());
  return r;
}

double quadratic_form(const Kernel& K, std::span<const Vec3> points, const Eigen::VectorXcd& c) {
  if (static_cast<std::size_t>(c.size()) != points.size()) throw DomainError("quadratic_form: size mismatch");
  std::complex<double> s = 0;
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = 0; b < points.size(); ++b) s += std::conj(c[a]) * c[b] * K(points[a], points[b]);
  return s.real();
}

double ray_probe(const Kernel& K, const Vec3& direction, std::span<const double> radii,
                 std::span<const double> coefficients) {
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw DomainError("ray_probe: direction must be a unit vector");
  if (radii.size() != coefficients.size()) throw DomainError("ray_probe: size mismatch");
  double s = 0;
  for (std::size_t a = 0; a < radii.size(); ++a)
    for (std::size_t b = 0; b < radii.size(); ++b)
      s += coefficients[a] * coefficients[b] * K(radii[a] * direction, radii[b] * direction);
  return s;
}

namespace {

constexpr int kProbeOrder = 128;

double coefficient(const Kernel& K, int j, double s, double r) {
  LegendreCoefficients c(K, j, std::max(kProbeOrder, 2 * j + 16));
  return c(j, s, r);
}

}  // namespace

double coefficient_probe(const Kernel& K, int j, double sigma, double rho) {
  if (!(sigma > 0 && rho > 0) || sigma == rho) throw DomainError("coefficient_probe: need distinct positive radii");
  return coefficient(K, j, sigma, sigma) + coefficient(K, j, rho, rho) - 2.0 * coefficient(K, j, sigma, rho);
}

GramReport coefficient_gram(const Kernel& K, int j, std::span<const double> radii, double tol) {
  LegendreCoefficients c(K, j, std::max(kProbeOrder, 2 * j + 16));
  GramReport r = gram_test([&](double s, double p) { return c(j, s, p); }, radii, tol);
  r.label = K.label();
  r.source = "coefficient";
  return r;
}

std::vector<Vec3> shell_configuration(double rho, int n_theta, int n_phi, bool with_origin) {
  std::vector<Vec3> pts;
  if (with_origin) pts.emplace_back(0, 0, 0);
  const auto rule = gauss_legendre(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    const double z = rule->nodes[i], s = std::sqrt(1 - z * z);
    for (int k = 0; k < n_phi; ++k) {
      // staggered azimuths so that no two rings line up
      const double phi = 2.0 * std::numbers::pi * (k + 0.5 * (i % 2)) / n_phi;
      pts.emplace_back(rho * s * std::cos(phi), rho * s * std::sin(phi), rho * z);
    }
  }
  return pts;
}

std::vector<double> h1_ladder(int n, double h_max) {
  std::vector<double> r;
  for (int i = 1; i <= n; ++i) {
    const double h = h_max * i / n;
    r.push_back(2.0 * h / (1.0 - h * h));
  }
  return r;
}

std::vector<Vec3> random_points(std::uint64_t seed, int n, double radius) {
  Rng rng(seed);
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < n) {
    Vec3 p = random_in_ball(rng, radius);
    if (p.norm() > 1e-9) pts.push_back(p);
  }
  return pts;
}

GramReport violation_search(const Kernel& K, const SearchOptions& opt) {
  if (opt.seeds.empty()) throw DomainError("violation_search: at least one seed required");
  // candidate configurations, all built before evaluation so the order is fixed
  struct Job {
    std::string source;
    std::uint64_t seed = 0;
    std::vector<Vec3> pts;
    std::vector<double> radii;  // coefficient gram when non-empty
  };
  std::vector<Job> jobs;
  for (auto s : opt.seeds) jobs.push_back({"gram", s, random_points(s, opt.n, opt.box_radius), {}});
  if (opt.structured) {
    const Vec3 d(0, 0, 1);
    for (double q : {1.3, 1.6, 2.0}) {
      std::vector<Vec3> pts;
      double r = 0.05;
      for (int i = 0; i < opt.n && r <= 1e3; ++i, r *= q) pts.push_back(r * d);
      jobs.push_back({"ladder", 0, pts, {}});
    }
    {
      std::vector<Vec3> pts;
      for (double r : h1_ladder(opt.n)) pts.push_back(r * d);
      jobs.push_back({"ray", 0, pts, {}});
    }
    for (double rho : {1.0, 2.0, 3.0, 5.0}) jobs.push_back({"shell", 0, shell_configuration(rho, 14, 28), {}});
    if (K.symmetry() != SymmetryClass::finite_sum || !K.amplitudes()) {
      std::vector<double> radii{1e-3};
      for (double r : h1_ladder(11, 0.96)) radii.push_back(r);
      jobs.push_back({"coefficient", 0, {}, radii});
      jobs.push_back({"coefficient", 0, {}, {1e-3, 1.0, 2.0, 3.0, 5.0}});
    }
  }
  std::vector<GramReport> reports(jobs.size());
  parallel_for(
      jobs.size(),
      [&](std::size_t i) {
        const Job& j = jobs[i];
        try {
          if (!j.radii.empty()) {
            reports[i] = coefficient_gram(K, 0, j.radii, opt.tol);
          } else {
            reports[i] = gram_test(K, j.pts, opt.tol);
            reports[i].source = j.source;
            reports[i].seed = j.seed;
          }
        } catch (const DomainError&) {
          // configuration outside the kernel's domain (e.g. the origin)
          reports[i].source = "skipped";
          reports[i].relative_min_eigenvalue = std::numeric_limits<double>::infinity();
        }
      },
      opt.parallel);
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i)
    if (reports[i].relative_min_eigenvalue < reports[best].relative_min_eigenvalue) best = i;
  return reports[best];
}

json to_json(const GramReport& r, bool include_matrix) {
  json j;
  j["label"] = r.label;
  j["source"] = r.source;
  j["seed"] = r.seed;
  j["verdict"] = to_string(r.verdict);
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["relative_min_eigenvalue"] = r.relative_min_eigenvalue;
  j["spectral_norm"] = r.spectral_norm;
  j["quadratic_form"] = r.quadratic_form;
  j["tol"] = r.tol;
  j["spectrum"] = std::vector<double>(r.spectrum.data(), r.spectrum.data() + r.spectrum.size());
  j["worst_vector"] = std::vector<double>(r.worst_vector.data(), r.worst_vector.data() + r.worst_vector.size());
  if (!r.points.empty()) {
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back({p.x(), p.y(), p.z()});
    j["points"] = pts;
  }
  if (!r.scalars.empty()) j["points"] = r.scalars;
  if (include_matrix) {
    json m = json::array();
    for (Eigen::Index a = 0; a < r.gram.rows(); ++a) {
      json row = json::array();
      for (Eigen::Index b = 0; b < r.gram.cols(); ++b) row.push_back(r.gram(a, b));
      m.push_back(row);
    }
    j["gram"] = m;
  }
  return j;
}

}  // namespace poloc
