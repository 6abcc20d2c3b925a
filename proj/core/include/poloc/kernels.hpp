// Profiles and kernels of the localization families.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "poloc/specfun.hpp"

namespace poloc {

using json = nlohmann::json;

enum class SymmetryClass {
  rotation_invariant,
  lorentz_invariant_profile,
  energy_prefactor_profile,
  finite_sum,
  one_dimensional
};
std::string to_string(SymmetryClass c);

enum class ProfileKind { power, principal, supplementary, mixture, gaussian, product, custom };
std::string to_string(ProfileKind k);

// g on [m^2, inf) with g(m^2) = 1. Internally stored for unit mass as a
// function of the excess u = t/m^2 - 1, which keeps the irreducible profiles
// accurate near the diagonal.
class RadialProfile {
 public:
  using Fn = std::function<double(double)>;

  RadialProfile() = default;
  // base(u) with u = t/m^2 - 1; dbase is d/du, may be empty
  RadialProfile(ProfileKind kind, std::string label, Fn base, Fn dbase, double mass, json params);

  double operator()(double t) const { return at_excess(t / (m_ * m_) - 1.0); }
  double at_excess(double u) const { return (*base_)(u < 0 ? 0.0 : u); }
  double at_rapidity(double kappa) const;
  bool has_derivative() const { return dbase_ && static_cast<bool>(*dbase_); }
  // dg/dt
  double derivative(double t) const;

  double mass() const { return m_; }
  ProfileKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const json& parameters() const { return params_; }
  bool valid() const { return static_cast<bool>(base_); }

  RadialProfile with_mass(double m) const;

 private:
  ProfileKind kind_ = ProfileKind::custom;
  std::string label_;
  std::shared_ptr<const Fn> base_, dbase_;
  double m_ = 1.0;
  json params_;
};

enum class Series { principal, supplementary };

struct MixtureAtom {
  double lambda = 0.0;
  double weight = 0.0;
};

// Principal and supplementary parts of the mixing measure. The density part
// is (lambda_k, w(lambda_k)) on a uniform grid, integrated by the trapezoid rule.
struct MixtureSpec {
  std::vector<MixtureAtom> principal;
  std::vector<MixtureAtom> supplementary;
  std::vector<std::pair<double, double>> density_grid;

  double total_weight() const;
  // throws DomainError on range or weight-sum violations
  void validate(double tol = 1e-12) const;
  static MixtureSpec from_density(const std::function<double(double)>& w, double lambda_max = 12.0,
                                  int points = 2048);
};

RadialProfile power_profile(double r, double m = 1.0);
RadialProfile profile_irreducible(Series kind, double lambda, double m = 1.0);
RadialProfile profile_mixture(const MixtureSpec& spec, double m = 1.0);
RadialProfile gaussian_profile(double varsigma, double m = 1.0);
RadialProfile profile_product(const RadialProfile& a, const RadialProfile& b);
RadialProfile custom_profile(std::string label, RadialProfile::Fn g_of_t, double m = 1.0,
                             RadialProfile::Fn dg_dt = {});

// Three components of a companion current kernel.
using CurrentKernel = std::function<Vec3(const Vec3&, const Vec3&)>;

// K(k,p) = sum_j sum_a e_ja(|k|) e_ja(|p|) P_j(cos angle): the structure of the
// finite kernels. Used by the partial-wave probability path.
struct FiniteAmplitudes {
  std::vector<std::vector<std::function<double(double)>>> terms;  // terms[j][a]
  int max_order() const { return static_cast<int>(terms.size()) - 1; }
};

class Kernel {
 public:
  using Eval = std::function<double(const Vec3&, const Vec3&)>;
  using RadialEval = std::function<double(double, double, double)>;

  struct Parts {
    std::string label;
    SymmetryClass symmetry = SymmetryClass::rotation_invariant;
    double mass = 1.0;
    Eval eval;
    RadialEval radial;  // optional fast path for the zonal form
    std::optional<RadialProfile> profile;
    std::optional<CurrentKernel> current;
    std::optional<FiniteAmplitudes> amplitudes;
    json spec;
    bool normalized = true;
  };

  Kernel() = default;
  explicit Kernel(Parts parts);

  double operator()(const Vec3& k, const Vec3& p) const { return impl_->eval(k, p); }
  // zonal form K(sigma e3, rho (0, sqrt(1-x^2), x))
  double radial(double sigma, double rho, double x) const;

  const std::string& label() const { return impl_->label; }
  SymmetryClass symmetry() const { return impl_->symmetry; }
  double mass() const { return impl_->mass; }
  const std::optional<RadialProfile>& profile() const { return impl_->profile; }
  const std::optional<CurrentKernel>& current() const { return impl_->current; }
  const std::optional<FiniteAmplitudes>& amplitudes() const { return impl_->amplitudes; }
  const json& spec() const { return impl_->spec; }
  bool normalized() const { return impl_->normalized; }
  bool valid() const { return static_cast<bool>(impl_); }
  // identity of the shared implementation; copies compare equal
  const void* id() const { return impl_.get(); }

 private:
  std::shared_ptr<const Parts> impl_;
};

// eps(k)eps(p) - k.p - m^2 for k = sigma e3, p at cosine x
double minkowski_excess_radial(double sigma, double rho, double x, double m = 1.0);

Kernel kernel_nwl(double m = 1.0);
Kernel kernel_terno_moretti(double m = 1.0);
Kernel kernel_tct(double m = 1.0);
Kernel kernel_causal(const RadialProfile& g);
inline Kernel kernel_causal_power(double r, double m = 1.0) { return kernel_causal(power_profile(r, m)); }
// g(k.p on shell): the Lorentz-invariant kernel of a profile
Kernel kernel_lorentz(const RadialProfile& g);
Kernel kernel_product(const Kernel& a, const Kernel& b);
Kernel kernel_to_shell(const Kernel& k);

using CoefficientFn = std::function<double(double, double)>;
// sum_{j<=J} k_j(|k|,|p|) P_j(cos); rejects k = 0 or p = 0
Kernel kernel_from_coefficients(std::vector<CoefficientFn> coeffs, int J,
                                const std::vector<double>& check_grid = {0.1, 0.5, 1, 2, 5, 10});

// Closed-form limits of the finite kernels along lambda p, lambda -> infinity.
double tm_limit(const Vec3& k, const Vec3& p, double m = 1.0);
double tct_limit(const Vec3& k, const Vec3& p, double m = 1.0);

}  // namespace poloc
