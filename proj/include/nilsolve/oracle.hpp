#pragma once

#include <cstddef>
#include <cstdint>

#include "nilsolve/poly.hpp"
#include "nilsolve/report.hpp"
#include "nilsolve/ring.hpp"

namespace nilsolve {

// Exhaustive evaluation over all of R^n, for any finite ring. Points are
// visited with x1 as the most significant coordinate. Each routine throws
// SearchSpaceTooLarge when m^n exceeds kOracleLimit.

inline constexpr std::uint64_t kOracleLimit = 10'000'000;

/// m^n, or nullopt when it exceeds kOracleLimit.
std::optional<std::uint64_t> oracle_space(std::size_t order, std::size_t n);

RangeReport brute_range(const FiniteRing& ring, const PolyExpr& f, std::size_t n);
SolveVerdict brute_solvable(const FiniteRing& ring, const PolyExpr& f, const PolyExpr& g, std::size_t n);
EquivVerdict brute_equivalent(const FiniteRing& ring, const PolyExpr& f, const PolyExpr& g, std::size_t n);

}  // namespace nilsolve
