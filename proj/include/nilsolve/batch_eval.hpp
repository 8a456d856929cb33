#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nilsolve/poly.hpp"
#include "nilsolve/ring.hpp"
#include "nilsolve/simd/kernels.hpp"

namespace nilsolve {

/// A polynomial flattened into a straight-line program of table lookups,
/// evaluated on up to kBatch points at once.
///
/// Storage is one slot of kBatch lanes per variable, distinct constant and
/// interior node. The caller fills the variable columns of a Workspace and
/// calls `run`.
class BatchEvaluator {
 public:
  static constexpr std::size_t kBatch = 256;

  class Workspace {
   public:
    /// Lanes of variable x_(var_index + 1).
    std::span<Elem> column(std::size_t var_index) noexcept {
      return {slots_.data() + var_index * kBatch, kBatch};
    }

   private:
    friend class BatchEvaluator;
    std::vector<Elem> slots_;
  };

  /// Throws UnboundVariable if f uses a variable beyond num_vars.
  BatchEvaluator(const PolyExpr& f, const FiniteRing& ring, std::size_t num_vars,
                 const simd::KernelSet& kernels = simd::default_kernels());

  std::size_t num_vars() const noexcept { return num_vars_; }
  const simd::KernelSet& kernels() const noexcept { return *kernels_; }

  Workspace make_workspace() const;

  /// Evaluates lanes [0, count) and returns their values.
  std::span<const Elem> run(Workspace& ws, std::size_t count) const;

 private:
  enum class Op { Neg, Add, Mul };
  struct Instr {
    Op op;
    std::size_t dst, lhs, rhs;
  };

  std::size_t compile(const PolyExpr& f);

  const FiniteRing* ring_;
  const simd::KernelSet* kernels_;
  std::size_t num_vars_;
  std::size_t num_slots_;
  std::vector<std::pair<std::size_t, Elem>> constants_;  // (slot, value)
  std::vector<Instr> program_;
  std::size_t result_slot_;
};

}  // namespace nilsolve
