#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, on
// x86-64, an AVX2 variant picked at runtime. Variants perform the same IEEE
// operations in the same order per element, so their outputs are
// bit-identical (the build disables FMA contraction).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace newton2d::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

struct GridMax {
  double value;
  std::size_t index;  // smallest index attaining `value`
};

struct KernelTable {
  Backend backend;

  /// dst[j] = min(dst[j], src[j] + add); where src[j] + add < dst[j]
  /// strictly, also arg[j] = tag. Used by the DP min-plus relaxation.
  void (*relax_shift)(const double* src, double add, double* dst,
                      std::int64_t* arg, std::int64_t tag, std::size_t n);

  /// max over begin <= i < end of -1/(1+u^2) - lambda*u, u = u0 + du*i.
  GridMax (*hamiltonian_grid_max)(double lambda, double u0, double du,
                                  std::size_t begin, std::size_t end);

  /// Specular reflection of the fixed velocity (vx, vy) off surfaces with
  /// the given slopes: n = (-u, 1)/sqrt(1+u^2), v' = v - 2(v.n)n.
  void (*reflect_batch)(const double* slopes, double vx, double vy,
                        double* out_vx, double* out_vy, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant is not compiled in or not supported by the CPU.
const KernelTable* avx2_table();

/// The table used by the library. Defaults to the best supported backend;
/// the NEWTON2D_KERNELS environment variable (scalar|avx2|auto) overrides.
const KernelTable& active();

/// Force a backend (tests, benchmarking). Returns false if unavailable.
bool set_backend(Backend b);
/// Return to automatic selection.
void reset_backend();

}  // namespace newton2d::kernels
