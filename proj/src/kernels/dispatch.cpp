#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace newton2d::kernels {

namespace {

const KernelTable kScalar{Backend::Scalar, &detail::relax_shift_scalar,
                          &detail::hamiltonian_grid_max_scalar,
                          &detail::reflect_batch_scalar};

#if defined(NEWTON2D_HAVE_AVX2)
const KernelTable kAvx2{Backend::Avx2, &detail::relax_shift_avx2,
                        &detail::hamiltonian_grid_max_avx2,
                        &detail::reflect_batch_avx2};
#endif

const KernelTable& automatic() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("NEWTON2D_KERNELS");
    const std::string pref = env ? env : "auto";
    if (pref == "scalar") return &kScalar;
    const KernelTable* simd = avx2_table();
    return simd ? simd : &kScalar;
  }();
  return *chosen;
}

std::atomic<const KernelTable*> g_forced{nullptr};

}  // namespace

std::string_view to_string(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(NEWTON2D_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  const KernelTable* forced = g_forced.load(std::memory_order_acquire);
  return forced ? *forced : automatic();
}

bool set_backend(Backend b) {
  const KernelTable* t = b == Backend::Scalar ? &kScalar : avx2_table();
  if (!t) return false;
  g_forced.store(t, std::memory_order_release);
  return true;
}

void reset_backend() { g_forced.store(nullptr, std::memory_order_release); }

}  // namespace newton2d::kernels
