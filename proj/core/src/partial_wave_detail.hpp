// Spherical Hankel transforms of zonal components against the amplitudes of
// a finite kernel (orders j <= 1).
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "poloc/kernels.hpp"
#include "poloc/specfun.hpp"

namespace poloc::detail {

struct Transform {
  int l = 0;
  std::vector<std::vector<std::complex<double>>> h0, h1, d1;  // [a][r node]
};

// rho_cut: nodes beyond it are skipped (the component vanishes there)
Transform hankel(const FiniteAmplitudes& amp, int l, const std::function<std::complex<double>(double)>& a,
                 const GaussRule& rho_rule, const GaussRule& r_rule, double rho_cut);

// 8/(2l+1) int r^2 [conj(H0) H0' + conj(D1) D1'] + l(l+1) conj(H1) H1' dr
std::complex<double> pair(const Transform& u, const Transform& v, const GaussRule& r_rule);

GaussRule rho_rule(double extent, double R, double frequency, double resolution);
GaussRule r_rule(double extent, double R, double resolution);

}  // namespace poloc::detail
