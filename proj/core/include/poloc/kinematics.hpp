// Rotations, boosts and the small deterministic RNG helpers used by samplers.
#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "poloc/specfun.hpp"

namespace poloc {

using Rng = std::mt19937_64;
using Vec4 = Eigen::Vector4d;  // (v0, v1, v2, v3)

// 53-bit uniform in [0,1); identical across standard libraries
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline double uniform(Rng& rng, double a, double b) { return a + (b - a) * uniform01(rng); }
double normal01(Rng& rng);

Vec3 random_unit(Rng& rng);
Vec3 random_in_ball(Rng& rng, double radius);
Eigen::Matrix3d random_rotation(Rng& rng);

// on-shell four-vector (eps(p), p)
inline Vec4 on_shell(const Vec3& p, double m = 1.0) {
  return Vec4(energy(p, m), p.x(), p.y(), p.z());
}

// Pure boost of rapidity eta along the unit vector n, acting on four-vectors.
Vec4 boost(const Vec4& v, const Vec3& n, double eta);
// Spatial part of the boosted on-shell vector.
Vec3 boost_momentum(const Vec3& p, const Vec3& n, double eta, double m = 1.0);

}  // namespace poloc
