#pragma once

#include <cstddef>
#include <optional>

#include "nilsolve/poly.hpp"
#include "nilsolve/report.hpp"
#include "nilsolve/ring.hpp"
#include "nilsolve/simd/kernels.hpp"
#include "nilsolve/support.hpp"

namespace nilsolve {

struct SolverOptions {
  /// Replaces the default variable bound k = min(l - 1, n); clamped to n.
  std::optional<std::size_t> k;
  /// Lower k to the largest number of distinct variables in a monomial of the
  /// expanded polynomial, when the expansion fits the monomial budget.
  bool tighten = false;
  std::size_t monomial_budget = kDefaultMonomialBudget;
  /// Worker threads; results do not depend on this.
  std::size_t jobs = 1;
  /// Kernel set for batch evaluation; default_kernels() when null.
  const simd::KernelSet* kernels = nullptr;
};

/// Value sets, solvability and equivalence over a finite nilpotent ring,
/// computed by evaluating only on the restricted-support substitution set.
///
/// A standard polynomial over a ring of nilpotency class l has at most l - 1
/// distinct variables per monomial, and its range is attained on tuples whose
/// i-th primary projection has at most k * |R_i| nonzero entries.
class NilpotentSolver {
 public:
  /// Throws NotNilpotentRing when the ring has no nilpotency class.
  explicit NilpotentSolver(const FiniteRing& ring);

  const FiniteRing& ring() const noexcept { return *ring_; }
  std::size_t nilpotency_class() const noexcept { return class_; }
  const PrimaryDecomposition& decomposition() const noexcept { return decomposition_; }

  /// The variable bound that `range` would use for f on n variables.
  std::size_t choose_k(const PolyExpr& f, std::size_t n, const SolverOptions& options) const;

  RangeReport range(const PolyExpr& f, const SolverOptions& options = {}) const;
  /// Does f(c) = g(c) for some c?
  SolveVerdict solvable(const PolyExpr& f, const PolyExpr& g, const SolverOptions& options = {}) const;
  /// Does f(c) = g(c) for every c?
  EquivVerdict equivalent(const PolyExpr& f, const PolyExpr& g, const SolverOptions& options = {}) const;

 private:
  const FiniteRing* ring_;
  std::size_t class_;
  PrimaryDecomposition decomposition_;
};

inline RangeReport range(const FiniteRing& ring, const PolyExpr& f, const SolverOptions& options = {}) {
  return NilpotentSolver(ring).range(f, options);
}
inline SolveVerdict solvable(const FiniteRing& ring, const PolyExpr& f, const PolyExpr& g,
                             const SolverOptions& options = {}) {
  return NilpotentSolver(ring).solvable(f, g, options);
}
inline EquivVerdict equivalent(const FiniteRing& ring, const PolyExpr& f, const PolyExpr& g,
                               const SolverOptions& options = {}) {
  return NilpotentSolver(ring).equivalent(f, g, options);
}

/// f + (-g), whose roots are the points where f and g agree.
inline PolyExpr difference(const PolyExpr& f, const PolyExpr& g) { return f + (-g); }

}  // namespace nilsolve
