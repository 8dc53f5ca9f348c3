#include <atomic>

#include "apspkit/kernels.hpp"

namespace apspkit::kernels {

namespace {

void minplus_row_scalar(const Dist* b, Dist a, std::int32_t k, Dist* c, std::int32_t* w,
                        std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    Dist t = b[j] == kInf ? kInf : a + b[j];
    if (t < c[j]) {
      c[j] = t;
      w[j] = k;
    }
  }
}

void minplus_row_nw_scalar(const Dist* b, Dist a, Dist* c, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    Dist t = b[j] == kInf ? kInf : a + b[j];
    c[j] = t < c[j] ? t : c[j];
  }
}

void or_row_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

void axpy_scalar(double* c, const double* b, double a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) c[j] += a * b[j];
}

const Table kScalar{"scalar", minplus_row_scalar, minplus_row_nw_scalar, or_row_scalar,
                    axpy_scalar};

std::atomic<bool> g_force_scalar{false};

}  // namespace

const Table* avx2_table();  // kernels_avx2.cpp

const Table& scalar() { return kScalar; }

bool cpu_has_avx2() {
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
}

const Table* avx2() { return cpu_has_avx2() ? avx2_table() : nullptr; }

const Table& active() {
  if (!g_force_scalar.load(std::memory_order_relaxed))
    if (const Table* t = avx2()) return *t;
  return kScalar;
}

void force_scalar(bool on) { g_force_scalar.store(on); }

}  // namespace apspkit::kernels
