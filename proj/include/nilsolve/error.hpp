#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilsolve {

enum class ErrorCode {
  InvalidArgument,
  NotAGroup,
  NotAssociativeMul,
  NotDistributive,
  InternalInconsistency,
  NotPrime,
  ParseError,
  SyntaxError,
  ConstOutOfRange,
  VarIndexZero,
  UnboundVariable,
  BudgetExceeded,
  NotNilpotentRing,
  SearchSpaceTooLarge,
  CountOverflow,
  DescentStuck,
  GroupTooLarge,
  GroundSetTooSmall,
  InjectivityViolated,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. `code()` identifies the
/// failure; `what()` carries a human-readable description.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Ring axiom violation with the element triple that witnesses it.
class AxiomError : public Error {
 public:
  AxiomError(ErrorCode code, const std::string& message, std::array<std::uint32_t, 3> witness)
      : Error(code, message), witness_(witness) {}

  const std::array<std::uint32_t, 3>& witness() const noexcept { return witness_; }

 private:
  std::array<std::uint32_t, 3> witness_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, const std::string& message, std::size_t position)
      : Error(code, message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nilsolve
