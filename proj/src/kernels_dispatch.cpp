#include <atomic>
#include <cstdlib>
#include <string_view>

#include "cmseq/kernels.hpp"

namespace cmseq::kernels {

namespace {

constexpr KernelTable kScalar{Backend::Scalar, "scalar", &scalar::dot, &scalar::axpy,
                              &scalar::gemm};

#if defined(CMSEQ_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::Avx2, "avx2", &avx2::dot, &avx2::axpy, &avx2::gemm};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* detect() {
  const KernelTable* best = avx2_table();
  if (const char* env = std::getenv("CMSEQ_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && best != nullptr) return best;
  }
  return best != nullptr ? best : &kScalar;
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{detect()};
  return current;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(CMSEQ_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(Backend backend) {
  const KernelTable* t = backend == Backend::Scalar ? &kScalar : avx2_table();
  if (t == nullptr) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

}  // namespace cmseq::kernels
