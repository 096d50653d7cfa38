#pragma once

#include "newton2d/kernels.hpp"

namespace newton2d::kernels::detail {

void relax_shift_scalar(const double* src, double add, double* dst,
                        std::int64_t* arg, std::int64_t tag, std::size_t n);
GridMax hamiltonian_grid_max_scalar(double lambda, double u0, double du,
                                    std::size_t begin, std::size_t end);
void reflect_batch_scalar(const double* slopes, double vx, double vy,
                          double* out_vx, double* out_vy, std::size_t n);

#if defined(NEWTON2D_HAVE_AVX2)
void relax_shift_avx2(const double* src, double add, double* dst,
                      std::int64_t* arg, std::int64_t tag, std::size_t n);
GridMax hamiltonian_grid_max_avx2(double lambda, double u0, double du,
                                  std::size_t begin, std::size_t end);
void reflect_batch_avx2(const double* slopes, double vx, double vy,
                        double* out_vx, double* out_vy, std::size_t n);
#endif

}  // namespace newton2d::kernels::detail
