#include "nilsolve/simd/kernels.hpp"

#if defined(__ARM_NEON) || defined(__aarch64__)

#include <arm_neon.h>

namespace nilsolve::simd {

namespace {

// NEON has no gather: index arithmetic is vectorized, the loads are per lane.
void lookup2_neon(const Lane* table, Lane stride, const Lane* a, const Lane* b, Lane* out, std::size_t count) {
  const uint32x4_t vstride = vdupq_n_u32(stride);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const uint32x4_t idx = vmlaq_u32(vld1q_u32(b + i), vld1q_u32(a + i), vstride);
    uint32x4_t r = vdupq_n_u32(0);
    r = vsetq_lane_u32(table[vgetq_lane_u32(idx, 0)], r, 0);
    r = vsetq_lane_u32(table[vgetq_lane_u32(idx, 1)], r, 1);
    r = vsetq_lane_u32(table[vgetq_lane_u32(idx, 2)], r, 2);
    r = vsetq_lane_u32(table[vgetq_lane_u32(idx, 3)], r, 3);
    vst1q_u32(out + i, r);
  }
  for (; i < count; ++i) out[i] = table[a[i] * stride + b[i]];
}

void lookup1_neon(const Lane* table, const Lane* a, Lane* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = table[a[i]];
}

std::size_t find_first_neon(const Lane* values, std::size_t count, Lane target, bool want_equal) {
  const uint32x4_t vt = vdupq_n_u32(target);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    uint32x4_t eq = vceqq_u32(vld1q_u32(values + i), vt);
    if (!want_equal) eq = vmvnq_u32(eq);
    if (vmaxvq_u32(eq) != 0) break;
  }
  for (; i < count; ++i)
    if ((values[i] == target) == want_equal) return i;
  return count;
}

constexpr KernelSet kNeon{Isa::Neon, "neon", lookup2_neon, lookup1_neon, find_first_neon};

}  // namespace

const KernelSet* detail::neon_kernels() noexcept { return &kNeon; }

}  // namespace nilsolve::simd

#else

namespace nilsolve::simd {
const KernelSet* detail::neon_kernels() noexcept { return nullptr; }
}  // namespace nilsolve::simd

#endif
