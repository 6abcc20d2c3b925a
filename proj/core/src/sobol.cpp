#include "poloc/sobol.hpp"

#include <bit>
#include <random>
#include <stdexcept>

namespace poloc {

namespace {

struct Direction {
  int s;
  unsigned a;
  std::array<std::uint32_t, 4> m;
};

// dimensions 2..6 of new-joe-kuo-6.21201
constexpr Direction kDirections[] = {
    {1, 0, {1, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0}},
    {3, 1, {1, 3, 1, 0}},
    {3, 2, {1, 1, 1, 0}},
    {4, 1, {1, 1, 3, 3}},
};

}  // namespace

Sobol::Sobol(int dim, std::uint64_t shift_seed) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Sobol: dimension must be in 1..6");
  for (int i = 0; i < 32; ++i) v_[0][i] = 1u << (31 - i);
  for (int d = 1; d < dim; ++d) {
    const Direction& D = kDirections[d - 1];
    auto& v = v_[d];
    for (int i = 0; i < D.s; ++i) v[i] = D.m[i] << (31 - i);
    for (int i = D.s; i < 32; ++i) {
      std::uint32_t x = v[i - D.s] ^ (v[i - D.s] >> D.s);
      for (int k = 1; k < D.s; ++k)
        if ((D.a >> (D.s - 1 - k)) & 1u) x ^= v[i - k];
      v[i] = x;
    }
  }
  if (shift_seed != 0) {
    std::mt19937_64 rng(shift_seed);
    for (int d = 0; d < dim; ++d) shift_[d] = static_cast<std::uint32_t>(rng() >> 32);
  }
  reset();
}

void Sobol::reset() {
  x_.fill(0);
  index_ = 0;
}

void Sobol::next(double* out) {
  for (int d = 0; d < dim_; ++d)
    out[d] = (static_cast<double>(x_[d] ^ shift_[d]) + 0.5) * 0x1.0p-32;
  // Gray-code update for the following index
  const int c = std::countr_zero(~static_cast<std::uint32_t>(index_));
  if (c >= 32) throw std::overflow_error("Sobol: sequence exhausted");
  for (int d = 0; d < dim_; ++d) x_[d] ^= v_[d][c];
  ++index_;
}

}  // namespace poloc
