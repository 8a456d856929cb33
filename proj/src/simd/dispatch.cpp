#include <cstdlib>
#include <string>

#include "nilsolve/simd/kernels.hpp"

namespace nilsolve::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> sets{&scalar_kernels()};
  if (const auto* avx2 = detail::avx2_kernels(); avx2 != nullptr && cpu_has_avx2()) sets.push_back(avx2);
  if (const auto* neon = detail::neon_kernels(); neon != nullptr) sets.push_back(neon);
  return sets;
}

const KernelSet& default_kernels() {
  static const KernelSet* chosen = [] {
    const auto sets = available_kernels();
    const char* forced = std::getenv("NILSOLVE_SIMD");
    if (forced != nullptr && *forced != '\0') {
      for (const auto* set : sets)
        if (to_string(set->isa) == forced) return set;
      return &scalar_kernels();
    }
    return sets.back();
  }();
  return *chosen;
}

}  // namespace nilsolve::simd
