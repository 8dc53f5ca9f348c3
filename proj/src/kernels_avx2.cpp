// built with -mavx2; only reached after the cpuid check in kernels_scalar.cpp
#include <immintrin.h>

#include "apspkit/kernels.hpp"

namespace apspkit::kernels {

namespace {

// low 32 bits of each 64-bit lane, packed into 4 x i32
inline __m128i narrow_mask(__m256i m64) {
  const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(m64, idx));
}

void minplus_row_avx2(const Dist* b, Dist a, std::int32_t k, Dist* c, std::int32_t* w,
                      std::size_t n) {
  const __m256i va = _mm256_set1_epi64x(a);
  const __m256i vinf = _mm256_set1_epi64x(kInf);
  const __m128i vk = _mm_set1_epi32(k);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
    __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + j));
    __m256i t = _mm256_add_epi64(va, vb);
    t = _mm256_blendv_epi8(t, vinf, _mm256_cmpeq_epi64(vb, vinf));
    __m256i lt = _mm256_cmpgt_epi64(vc, t);
    if (_mm256_testz_si256(lt, lt)) continue;
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(c + j), _mm256_blendv_epi8(vc, t, lt));
    __m128i vw = _mm_loadu_si128(reinterpret_cast<const __m128i*>(w + j));
    vw = _mm_blendv_epi8(vw, vk, narrow_mask(lt));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(w + j), vw);
  }
  for (; j < n; ++j) {
    Dist t = b[j] == kInf ? kInf : a + b[j];
    if (t < c[j]) {
      c[j] = t;
      w[j] = k;
    }
  }
}

void minplus_row_nw_avx2(const Dist* b, Dist a, Dist* c, std::size_t n) {
  const __m256i va = _mm256_set1_epi64x(a);
  const __m256i vinf = _mm256_set1_epi64x(kInf);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
    __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + j));
    __m256i t = _mm256_add_epi64(va, vb);
    t = _mm256_blendv_epi8(t, vinf, _mm256_cmpeq_epi64(vb, vinf));
    vc = _mm256_blendv_epi8(vc, t, _mm256_cmpgt_epi64(vc, t));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(c + j), vc);
  }
  for (; j < n; ++j) {
    Dist t = b[j] == kInf ? kInf : a + b[j];
    c[j] = t < c[j] ? t : c[j];
  }
}

void or_row_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

void axpy_avx2(double* c, const double* b, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  // mul then add (no fma) so results match the scalar table bit for bit
  for (; j + 4 <= n; j += 4) {
    __m256d vb = _mm256_loadu_pd(b + j);
    __m256d vc = _mm256_loadu_pd(c + j);
    _mm256_storeu_pd(c + j, _mm256_add_pd(vc, _mm256_mul_pd(va, vb)));
  }
  for (; j < n; ++j) c[j] += a * b[j];
}

const Table kAvx2{"avx2", minplus_row_avx2, minplus_row_nw_avx2, or_row_avx2, axpy_avx2};

}  // namespace

const Table* avx2_table() { return &kAvx2; }

}  // namespace apspkit::kernels
