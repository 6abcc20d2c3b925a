// Sobol points in up to six dimensions (Joe-Kuo direction numbers) with
// random digital shifts.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace poloc {

class Sobol {
 public:
  static constexpr int kMaxDim = 6;
  explicit Sobol(int dim, std::uint64_t shift_seed = 0);

  int dim() const { return dim_; }
  // next point in (0,1)^dim, shifted; index advances by one
  void next(double* out);
  void reset();
  std::uint64_t index() const { return index_; }

 private:
  int dim_;
  std::array<std::array<std::uint32_t, 32>, kMaxDim> v_{};
  std::array<std::uint32_t, kMaxDim> x_{}, shift_{};
  std::uint64_t index_ = 0;
};

}  // namespace poloc
