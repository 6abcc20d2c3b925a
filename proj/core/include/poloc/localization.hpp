// Ball localization probabilities, time evolution, CT margins, point-localized
// sequences and norm lower bounds.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poloc/kernels.hpp"

namespace poloc {

using cplx = std::complex<double>;

enum class StateFamily { gaussian, plss, custom };
std::string to_string(StateFamily f);

// phi(p) = e^{-i b.p} e^{-i t eps(p)} sum_l a_l(|p|) P_l(n.p/|p|)
class StateWavepacket {
 public:
  using Radial = std::function<cplx(double)>;

  StateWavepacket() = default;
  // envelope: tau with |phi| <~ exp(-|p|^2 / (2 tau^2)); extent: radius beyond
  // which the amplitude is below 1e-16 of its size
  StateWavepacket(StateFamily family, std::vector<Radial> parts, Vec3 axis, double envelope, double extent,
                  double mass, json params);

  cplx operator()(const Vec3& p) const;
  // a_l(rho) e^{-i t eps(rho)}
  cplx radial_part(int l, double rho) const;
  int max_l() const { return static_cast<int>(parts_->size()) - 1; }

  StateFamily family() const { return family_; }
  Vec3 axis() const { return frame_.col(2); }
  // orthonormal frame whose third column is the axis; QMC samples live in it
  const Eigen::Matrix3d& frame() const { return frame_; }
  const Vec3& center() const { return b_; }
  double time() const { return t_; }
  double mass() const { return m_; }
  double envelope() const { return tau_; }
  double extent() const { return extent_; }
  const json& params() const { return params_; }

  StateWavepacket translated(const Vec3& b) const;  // multiplies by e^{-i b.p}
  StateWavepacket rotated(const Eigen::Matrix3d& R) const;
  StateWavepacket with_time(double t) const;

  // sum_l 4 pi/(2l+1) int rho^2 |a_l|^2 on a fine radial rule
  double norm_squared() const;

 private:
  StateFamily family_ = StateFamily::custom;
  std::shared_ptr<const std::vector<Radial>> parts_;
  Eigen::Matrix3d frame_ = Eigen::Matrix3d::Identity();
  Vec3 b_ = Vec3::Zero();
  double t_ = 0.0;
  double tau_ = 1.0;
  double extent_ = 10.0;
  double m_ = 1.0;
  json params_;
};

// pi^{-3/4} s^{3/2} exp(-s^2 |p|^2 / 2), centred at b in position space
StateWavepacket gaussian_state(double s, const Vec3& b = Vec3::Zero(), double m = 1.0);
// c_n e^{-i b.p} e^{-|p|^2/n^2} K(k0, p), zonal about k0
StateWavepacket plss_state(const Kernel& K, const Vec3& k0, const Vec3& b, double n, int max_l = 16);
StateWavepacket custom_state(std::vector<StateWavepacket::Radial> parts, const Vec3& axis, double envelope,
                             double extent, double m = 1.0);

// e^{-i t eps(p)} phi(p)
StateWavepacket evolve(const StateWavepacket& phi, double t);
// (D_m phi)(p) = m^{3/2} phi(m p); unevolved states only
StateWavepacket dilate(const StateWavepacket& phi, double m);

struct BallRegion {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
  BallRegion() = default;
  BallRegion(const Vec3& c, double r);
  explicit BallRegion(double r) : BallRegion(Vec3::Zero(), r) {}
};

// int_{|x|<=R} e^{i q.x} d^3x
double ball_form_factor(double q, double R);

enum class Method { automatic, tensor_quadrature, partial_wave, quasi_monte_carlo };
std::string to_string(Method m);

struct LocalizationProbability {
  double value = 0;
  double error = 0;  // grid-difference estimate, or the QMC standard error
  Method method = Method::automatic;
};

struct ProbabilityOptions {
  Method method = Method::automatic;
  double resolution = 1.0;       // scales all grid densities
  bool refine = true;            // error from a second, 1.5x denser grid
  std::uint64_t qmc_points = 1u << 20;
  int qmc_randomizations = 16;
  std::uint64_t seed = 1;
  bool parallel = false;
  std::uint64_t budget = 4'000'000'000ULL;  // kernel evaluations
};

LocalizationProbability probability(const Kernel& K, const StateWavepacket& phi, const BallRegion& ball,
                                    const ProbabilityOptions& opt = {});

// Zonal reduction for a concentric ball:
//   P = sum_l 1/(pi(2l+1)) sum_ik conj(a_l(s_i)) a_l(r_k) M_l(i,k),
//   M_l(i,k) = w_i w_k s_i^2 r_k^2 int K(s_i, r_k, x) F_R(q) P_l(x) dx.
class BallOperator {
 public:
  // frequency: largest phase rate |t| carried by the states it will be applied to
  BallOperator(const Kernel& K, double R, double rho_max, int L, double resolution = 1.0, bool parallel = false,
               double frequency = 0.0);
  double radius() const { return R_; }
  double rho_max() const { return rho_max_; }
  int max_l() const { return static_cast<int>(M_.size()) - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const Eigen::MatrixXd& matrix(int l) const { return M_.at(l); }
  std::uint64_t evaluations() const { return evals_; }

  double apply(const StateWavepacket& phi) const;
  // <f, T g> for real zonal radial functions of one order l (bilinear form)
  double bilinear(int l, const std::function<double(double)>& f, const std::function<double(double)>& g) const;

 private:
  double R_, rho_max_;
  std::vector<double> nodes_, weights_;
  std::vector<Eigen::MatrixXd> M_;
  std::uint64_t evals_ = 0;
};

// Two grids; value from the finer one, error the difference.
LocalizationProbability tensor_probability(const Kernel& K, const StateWavepacket& phi, double R,
                                           const ProbabilityOptions& opt = {});
// Finite kernels (orders j <= 1) via spherical Hankel transforms of the state.
LocalizationProbability partial_wave_probability(const Kernel& K, const StateWavepacket& phi, double R,
                                                 const ProbabilityOptions& opt = {});
LocalizationProbability qmc_probability(const Kernel& K, const StateWavepacket& phi, const BallRegion& ball,
                                        const ProbabilityOptions& opt = {});

struct CtMargin {
  double margin = 0, error = 0;
  LocalizationProbability grown, evolved;
};
// P(K, phi, ball grown to R + |t|) - P(K, evolve(phi, -t), ball)
CtMargin ct_inequality(const Kernel& K, const StateWavepacket& phi, const BallRegion& ball, double t,
                       const ProbabilityOptions& opt = {});

std::vector<LocalizationProbability> plss_sequence(const Kernel& K, const Vec3& k0, const Vec3& b,
                                                   const BallRegion& ball, std::span<const double> ns,
                                                   const ProbabilityOptions& opt = {});

struct NormBound {
  int basis_size = 0;
  int kept = 0;
  double bound = 0;
  double block_bound[2] = {0, 0};  // l = 0 and l = 1 blocks
};
// Largest generalized eigenvalue of (A, G) over nested Gaussian widths
// s_k = 1.2 R 0.85^k with angular factors {1, P_1}; N <= 40.
NormBound norm_lower_bound(const Kernel& K, const BallRegion& ball, int N, const ProbabilityOptions& opt = {});

using KernelFamily = std::function<Kernel(double m)>;
// |P(K^m, phi, ball) - P(K^1, D_m phi, m ball)| and the combined error
struct MassScaling {
  double residual = 0, error = 0;
  LocalizationProbability lhs, rhs;
};
MassScaling mass_scaling_check(const KernelFamily& family, double m, const BallRegion& ball,
                               const StateWavepacket& phi, const ProbabilityOptions& opt = {});
MassScaling mass_scaling_check(const RadialProfile& g, double m, const BallRegion& ball,
                               const StateWavepacket& phi, const ProbabilityOptions& opt = {});

json to_json(const LocalizationProbability& p);

}  // namespace poloc
