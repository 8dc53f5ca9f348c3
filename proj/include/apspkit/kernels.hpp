#pragma once

#include <cstddef>
#include <cstdint>

#include "apspkit/core.hpp"

namespace apspkit::kernels {

// inner loops shared by the product engines; one scalar table and one AVX2
// table, chosen at runtime
struct Table {
  const char* name;
  // c[j] = min(c[j], a + b[j]); w[j] = k where c improved (strictly). a finite.
  void (*minplus_row)(const Dist* b, Dist a, std::int32_t k, Dist* c, std::int32_t* w,
                      std::size_t n);
  // same without witnesses
  void (*minplus_row_nw)(const Dist* b, Dist a, Dist* c, std::size_t n);
  // dst |= src over words
  void (*or_row)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  // c[j] += a * b[j]
  void (*axpy)(double* c, const double* b, double a, std::size_t n);
};

const Table& scalar();
// nullptr when the CPU lacks AVX2
const Table* avx2();
const Table& active();
// tests flip this to compare tables end to end
void force_scalar(bool on);
bool cpu_has_avx2();

}  // namespace apspkit::kernels
