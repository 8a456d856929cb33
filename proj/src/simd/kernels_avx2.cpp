// Built with -mavx2; only reached after a runtime CPU check.

#include "nilsolve/simd/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace nilsolve::simd {

namespace {

void lookup2_avx2(const Lane* table, Lane stride, const Lane* a, const Lane* b, Lane* out, std::size_t count) {
  const __m256i vstride = _mm256_set1_epi32(static_cast<int>(stride));
  const int* base = reinterpret_cast<const int*>(table);
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(va, vstride), vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_i32gather_epi32(base, idx, 4));
  }
  for (; i < count; ++i) out[i] = table[a[i] * stride + b[i]];
}

void lookup1_avx2(const Lane* table, const Lane* a, Lane* out, std::size_t count) {
  const int* base = reinterpret_cast<const int*>(table);
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_i32gather_epi32(base, idx, 4));
  }
  for (; i < count; ++i) out[i] = table[a[i]];
}

std::size_t find_first_avx2(const Lane* values, std::size_t count, Lane target, bool want_equal) {
  const __m256i vt = _mm256_set1_epi32(static_cast<int>(target));
  const unsigned flip = want_equal ? 0U : 0xFFU;
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
    const unsigned mask =
        (static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, vt)))) ^ flip) & 0xFFU;
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  for (; i < count; ++i)
    if ((values[i] == target) == want_equal) return i;
  return count;
}

constexpr KernelSet kAvx2{Isa::Avx2, "avx2", lookup2_avx2, lookup1_avx2, find_first_avx2};

}  // namespace

const KernelSet* detail::avx2_kernels() noexcept { return &kAvx2; }

}  // namespace nilsolve::simd

#else

namespace nilsolve::simd {
const KernelSet* detail::avx2_kernels() noexcept { return nullptr; }
}  // namespace nilsolve::simd

#endif
