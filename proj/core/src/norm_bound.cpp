#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "partial_wave_detail.hpp"
#include "poloc/localization.hpp"

namespace poloc {

namespace {

constexpr double kPi = std::numbers::pi;
// momenta beyond which a basis function is dropped on the tensor path
constexpr double kTensorRhoCap = 80.0;

double block_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& G, int& kept) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(G);
  const Eigen::VectorXd lam = eg.eigenvalues();
  const double top = lam.maxCoeff();
  std::vector<int> idx;
  for (int i = 0; i < lam.size(); ++i)
    if (lam[i] > 1e-12 * top) idx.push_back(i);
  kept = static_cast<int>(idx.size());
  Eigen::MatrixXd W(G.rows(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c) W.col(c) = eg.eigenvectors().col(idx[c]) / std::sqrt(lam[idx[c]]);
  const Eigen::MatrixXd B = W.transpose() * A * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(0.5 * (B + B.transpose()));
  return eb.eigenvalues().maxCoeff();
}

}  // namespace

NormBound norm_lower_bound(const Kernel& K, const BallRegion& ball, int N, const ProbabilityOptions& opt) {
  if (N < 1 || N > 40) throw DomainError("norm_lower_bound: basis size must be in [1, 40]");
  const double R = ball.radius;
  const bool finite = K.amplitudes() && K.amplitudes()->max_order() <= 1;
  std::vector<double> widths;
  for (int k = 0; k < N; ++k) {
    const double s = 1.2 * R * std::pow(0.85, k);
    if (!finite && 6.6 / s > kTensorRhoCap) break;
    widths.push_back(s);
  }
  NormBound out;
  out.basis_size = 2 * N;
  if (widths.empty()) throw DomainError("norm_lower_bound: no basis function fits the momentum cap");
  const std::size_t n = widths.size();
  const double extent = 6.6 / widths.back();

  std::shared_ptr<BallOperator> op;
  GaussRule rho, rr;
  if (finite) {
    rho = detail::rho_rule(extent, R, 0.0, opt.resolution);
    rr = detail::r_rule(extent, R, opt.resolution);
  } else {
    op = std::make_shared<BallOperator>(K, R, extent, 1, opt.resolution, opt.parallel);
  }
  for (int l = 0; l <= 1; ++l) {
    Eigen::MatrixXd A(n, n), G(n, n);
    std::vector<std::function<double(double)>> basis;
    for (double s : widths) {
      if (l == 0)
        basis.push_back([s](double r) { return std::exp(-0.5 * s * s * r * r); });
      else
        basis.push_back([s](double r) { return r * std::exp(-0.5 * s * s * r * r); });
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double a = 0.5 * (widths[i] * widths[i] + widths[j] * widths[j]);
        G(i, j) = l == 0 ? kPi * std::sqrt(kPi) / std::pow(a, 1.5) : kPi * std::sqrt(kPi) / (2.0 * std::pow(a, 2.5));
      }
    if (finite) {
      std::vector<detail::Transform> t;
      for (std::size_t i = 0; i < n; ++i)
        t.push_back(detail::hankel(*K.amplitudes(), l, [&](double r) { return std::complex<double>(basis[i](r)); },
                                   rho, rr, 6.6 / widths[i]));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) A(i, j) = A(j, i) = detail::pair(t[i], t[j], rr).real();
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) A(i, j) = A(j, i) = op->bilinear(l, basis[i], basis[j]);
    }
    int kept = 0;
    out.block_bound[l] = block_eigenvalue(A, G, kept);
    out.kept += kept;
  }
  out.bound = std::max(out.block_bound[0], out.block_bound[1]);
  return out;
}

}  // namespace poloc
