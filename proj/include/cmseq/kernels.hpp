#pragma once

// Inner-loop arithmetic kernels used by the dense matrix code.
//
// Every kernel has a portable scalar reference implementation. On x86-64 an
// AVX2/FMA variant is compiled separately and chosen at runtime when the CPU
// supports it. Variants agree up to floating-point reassociation; the
// equivalence tests pin that down.

#include <cstddef>
#include <string_view>

namespace cmseq::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  std::string_view name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // c(m x n) += a(m x k) * b(k x n), all row-major and densely packed.
  void (*gemm)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// Table used by the library. Chosen on first use: the CMSEQ_KERNELS environment
// variable ("scalar" or "avx2") overrides autodetection.
const KernelTable& active();

// Force a backend. Returns false (and leaves the selection unchanged) if the
// backend is unavailable on this machine.
bool select(Backend backend);

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                 std::size_t n) {
  active().gemm(a, b, c, m, k, n);
}

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
}  // namespace scalar

#if defined(CMSEQ_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n);
}  // namespace avx2
#endif

}  // namespace cmseq::kernels
