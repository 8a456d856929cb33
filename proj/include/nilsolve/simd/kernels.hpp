#pragma once

// Data-parallel table kernels used by the batched polynomial evaluator.
//
// Every ring operation on a batch of lanes is a table lookup:
//   binary:  out[i] = table[a[i] * stride + b[i]]
//   unary:   out[i] = table[a[i]]
// A scalar reference implementation is always present. Vector variants are
// compiled when the target allows and selected at runtime after a CPU check;
// they must agree with the scalar kernels bit for bit.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace nilsolve::simd {

using Lane = std::uint32_t;

enum class Isa { Scalar, Avx2, Neon };

struct KernelSet {
  Isa isa;
  const char* name;
  void (*lookup2)(const Lane* table, Lane stride, const Lane* a, const Lane* b, Lane* out, std::size_t count);
  void (*lookup1)(const Lane* table, const Lane* a, Lane* out, std::size_t count);
  /// Index of the first lane whose value equals (or, with want_equal false,
  /// differs from) target; `count` when there is none.
  std::size_t (*find_first)(const Lane* values, std::size_t count, Lane target, bool want_equal);
};

const KernelSet& scalar_kernels() noexcept;

/// Kernel sets usable on this machine, scalar first.
std::vector<const KernelSet*> available_kernels();

/// Fastest available kernel set. The environment variable NILSOLVE_SIMD
/// ("scalar", "avx2", "neon") restricts the choice when set.
const KernelSet& default_kernels();

std::string_view to_string(Isa isa) noexcept;

namespace detail {
// Null when the variant was not compiled for this target.
const KernelSet* avx2_kernels() noexcept;
const KernelSet* neon_kernels() noexcept;
}  // namespace detail

}  // namespace nilsolve::simd
