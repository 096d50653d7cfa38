#include <cmath>

#include "kernels_impl.hpp"

namespace newton2d::kernels::detail {

void relax_shift_scalar(const double* src, double add, double* dst,
                        std::int64_t* arg, std::int64_t tag, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double cand = src[j] + add;
    if (cand < dst[j]) {
      dst[j] = cand;
      arg[j] = tag;
    }
  }
}

GridMax hamiltonian_grid_max_scalar(double lambda, double u0, double du,
                                    std::size_t begin, std::size_t end) {
  GridMax best{-INFINITY, begin};
  for (std::size_t i = begin; i < end; ++i) {
    const double u = u0 + du * static_cast<double>(i);
    const double q = 1.0 + u * u;
    const double h = -1.0 / q - lambda * u;
    if (h > best.value) best = {h, i};
  }
  return best;
}

void reflect_batch_scalar(const double* slopes, double vx, double vy,
                          double* out_vx, double* out_vy, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double u = slopes[j];
    const double inv = 1.0 / std::sqrt(1.0 + u * u);
    const double nx = -u * inv;
    const double ny = inv;
    const double two_d = 2.0 * (vx * nx + vy * ny);
    out_vx[j] = vx - two_d * nx;
    out_vy[j] = vy - two_d * ny;
  }
}

}  // namespace newton2d::kernels::detail
