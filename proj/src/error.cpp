#include "nilsolve/error.hpp"

namespace nilsolve {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::NotAssociativeMul: return "NotAssociativeMul";
    case ErrorCode::NotDistributive: return "NotDistributive";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ConstOutOfRange: return "ConstOutOfRange";
    case ErrorCode::VarIndexZero: return "VarIndexZero";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotNilpotentRing: return "NotNilpotentRing";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::CountOverflow: return "CountOverflow";
    case ErrorCode::DescentStuck: return "DescentStuck";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::GroundSetTooSmall: return "GroundSetTooSmall";
    case ErrorCode::InjectivityViolated: return "InjectivityViolated";
  }
  return "Unknown";
}

}  // namespace nilsolve
