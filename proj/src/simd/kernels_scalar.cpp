#include "nilsolve/simd/kernels.hpp"

namespace nilsolve::simd {

namespace {

void lookup2_scalar(const Lane* table, Lane stride, const Lane* a, const Lane* b, Lane* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = table[a[i] * stride + b[i]];
}

void lookup1_scalar(const Lane* table, const Lane* a, Lane* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = table[a[i]];
}

std::size_t find_first_scalar(const Lane* values, std::size_t count, Lane target, bool want_equal) {
  for (std::size_t i = 0; i < count; ++i)
    if ((values[i] == target) == want_equal) return i;
  return count;
}

constexpr KernelSet kScalar{Isa::Scalar, "scalar", lookup2_scalar, lookup1_scalar, find_first_scalar};

}  // namespace

const KernelSet& scalar_kernels() noexcept { return kScalar; }

}  // namespace nilsolve::simd
