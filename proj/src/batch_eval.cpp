#include "nilsolve/batch_eval.hpp"

#include <algorithm>

#include "nilsolve/error.hpp"

namespace nilsolve {

BatchEvaluator::BatchEvaluator(const PolyExpr& f, const FiniteRing& ring, std::size_t num_vars,
                               const simd::KernelSet& kernels)
    : ring_(&ring), kernels_(&kernels), num_vars_(num_vars), num_slots_(num_vars) {
  if (num_variables(f) > num_vars)
    throw Error(ErrorCode::UnboundVariable, "x" + std::to_string(num_variables(f)) + " has no value");
  result_slot_ = compile(f);
}

std::size_t BatchEvaluator::compile(const PolyExpr& f) {
  switch (f.kind()) {
    case PolyExpr::Kind::Var: return f.value() - 1;
    case PolyExpr::Kind::Const: {
      auto it = std::find_if(constants_.begin(), constants_.end(),
                             [&](const auto& c) { return c.second == f.value(); });
      if (it != constants_.end()) return it->first;
      constants_.emplace_back(num_slots_, f.value());
      return num_slots_++;
    }
    case PolyExpr::Kind::Neg: {
      const std::size_t operand = compile(f.lhs());
      program_.push_back({Op::Neg, num_slots_, operand, operand});
      return num_slots_++;
    }
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Mul: {
      const std::size_t lhs = compile(f.lhs());
      const std::size_t rhs = compile(f.rhs());
      program_.push_back({f.kind() == PolyExpr::Kind::Add ? Op::Add : Op::Mul, num_slots_, lhs, rhs});
      return num_slots_++;
    }
  }
  return 0;
}

BatchEvaluator::Workspace BatchEvaluator::make_workspace() const {
  Workspace ws;
  ws.slots_.assign(num_slots_ * kBatch, ring_->zero());
  for (const auto& [slot, value] : constants_)
    std::fill_n(ws.slots_.begin() + static_cast<std::ptrdiff_t>(slot * kBatch), kBatch, value);
  return ws;
}

std::span<const Elem> BatchEvaluator::run(Workspace& ws, std::size_t count) const {
  Elem* base = ws.slots_.data();
  const auto stride = static_cast<Elem>(ring_->order());
  for (const auto& instr : program_) {
    Elem* dst = base + instr.dst * kBatch;
    const Elem* lhs = base + instr.lhs * kBatch;
    const Elem* rhs = base + instr.rhs * kBatch;
    switch (instr.op) {
      case Op::Neg: kernels_->lookup1(ring_->neg_table().data(), lhs, dst, count); break;
      case Op::Add: kernels_->lookup2(ring_->add_table().data(), stride, lhs, rhs, dst, count); break;
      case Op::Mul: kernels_->lookup2(ring_->mul_table().data(), stride, lhs, rhs, dst, count); break;
    }
  }
  return {base + result_slot_ * kBatch, count};
}

}  // namespace nilsolve
