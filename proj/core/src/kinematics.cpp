#include "poloc/kinematics.hpp"

#include <cmath>
#include <numbers>

namespace poloc {

double normal01(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 random_unit(Rng& rng) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(s * std::cos(phi), s * std::sin(phi), z);
}

Vec3 random_in_ball(Rng& rng, double radius) {
  const double r = radius * std::cbrt(uniform01(rng));
  return r * random_unit(rng);
}

Eigen::Matrix3d random_rotation(Rng& rng) {
  Eigen::Quaterniond q(normal01(rng), normal01(rng), normal01(rng), normal01(rng));
  q.normalize();
  return q.toRotationMatrix();
}

Vec4 boost(const Vec4& v, const Vec3& n, double eta) {
  const Vec3 s(v[1], v[2], v[3]);
  const double par = s.dot(n);
  const double ch = std::cosh(eta), sh = std::sinh(eta);
  const double v0 = ch * v[0] + sh * par;
  const double npar = sh * v[0] + ch * par;
  const Vec3 out = s + (npar - par) * n;
  return Vec4(v0, out.x(), out.y(), out.z());
}

Vec3 boost_momentum(const Vec3& p, const Vec3& n, double eta, double m) {
  const Vec4 b = boost(on_shell(p, m), n, eta);
  return Vec3(b[1], b[2], b[3]);
}

}  // namespace poloc
