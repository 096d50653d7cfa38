#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace newton2d::kernels::detail {

void relax_shift_avx2(const double* src, double add, double* dst,
                      std::int64_t* arg, std::int64_t tag, std::size_t n) {
  const __m256d vadd = _mm256_set1_pd(add);
  const __m256i vtag = _mm256_set1_epi64x(tag);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d cand = _mm256_add_pd(_mm256_loadu_pd(src + j), vadd);
    const __m256d cur = _mm256_loadu_pd(dst + j);
    const __m256d lt = _mm256_cmp_pd(cand, cur, _CMP_LT_OQ);
    if (_mm256_movemask_pd(lt) == 0) continue;
    _mm256_storeu_pd(dst + j, _mm256_blendv_pd(cur, cand, lt));
    auto* argp = reinterpret_cast<__m256i*>(arg + j);
    const __m256d old_arg = _mm256_castsi256_pd(_mm256_loadu_si256(argp));
    const __m256d new_arg =
        _mm256_blendv_pd(old_arg, _mm256_castsi256_pd(vtag), lt);
    _mm256_storeu_si256(argp, _mm256_castpd_si256(new_arg));
  }
  relax_shift_scalar(src + j, add, dst + j, arg + j, tag, n - j);
}

GridMax hamiltonian_grid_max_avx2(double lambda, double u0, double du,
                                  std::size_t begin, std::size_t end) {
  const __m256d vl = _mm256_set1_pd(lambda);
  const __m256d vu0 = _mm256_set1_pd(u0);
  const __m256d vdu = _mm256_set1_pd(du);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d minus_one = _mm256_set1_pd(-1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const double b = static_cast<double>(begin);
  __m256d idx = _mm256_setr_pd(b, b + 1.0, b + 2.0, b + 3.0);
  __m256d best = _mm256_set1_pd(-INFINITY);
  __m256d best_idx = _mm256_setzero_pd();

  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    const __m256d u = _mm256_add_pd(vu0, _mm256_mul_pd(vdu, idx));
    const __m256d q = _mm256_add_pd(one, _mm256_mul_pd(u, u));
    const __m256d h =
        _mm256_sub_pd(_mm256_div_pd(minus_one, q), _mm256_mul_pd(vl, u));
    const __m256d gt = _mm256_cmp_pd(h, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, h, gt);
    best_idx = _mm256_blendv_pd(best_idx, idx, gt);
    idx = _mm256_add_pd(idx, four);
  }

  alignas(32) double vals[4];
  alignas(32) double idxs[4];
  _mm256_store_pd(vals, best);
  _mm256_store_pd(idxs, best_idx);
  GridMax out{-INFINITY, begin};
  for (int l = 0; l < 4; ++l) {
    const auto li = static_cast<std::size_t>(idxs[l]);
    if (vals[l] > out.value || (vals[l] == out.value && li < out.index))
      out = {vals[l], li};
  }
  for (; i < end; ++i) {
    const double u = u0 + du * static_cast<double>(i);
    const double q = 1.0 + u * u;
    const double h = -1.0 / q - lambda * u;
    if (h > out.value) out = {h, i};
  }
  return out;
}

void reflect_batch_avx2(const double* slopes, double vx, double vy,
                        double* out_vx, double* out_vy, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d vvx = _mm256_set1_pd(vx);
  const __m256d vvy = _mm256_set1_pd(vy);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d u = _mm256_loadu_pd(slopes + j);
    const __m256d inv =
        _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_add_pd(one, _mm256_mul_pd(u, u))));
    const __m256d nx = _mm256_mul_pd(_mm256_xor_pd(u, sign), inv);
    const __m256d ny = inv;
    const __m256d dot =
        _mm256_add_pd(_mm256_mul_pd(vvx, nx), _mm256_mul_pd(vvy, ny));
    const __m256d two_d = _mm256_mul_pd(two, dot);
    _mm256_storeu_pd(out_vx + j, _mm256_sub_pd(vvx, _mm256_mul_pd(two_d, nx)));
    _mm256_storeu_pd(out_vy + j, _mm256_sub_pd(vvy, _mm256_mul_pd(two_d, ny)));
  }
  reflect_batch_scalar(slopes + j, vx, vy, out_vx + j, out_vy + j, n - j);
}

}  // namespace newton2d::kernels::detail
