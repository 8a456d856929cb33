#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nilsolve/ring.hpp"

namespace nilsolve {

/// Non-commutative polynomial expression over a finite ring, built from
/// variables x1, x2, ... and ring constants by negation, addition and
/// multiplication. Bracketing is kept as written; nothing is simplified.
///
/// Expressions are immutable values with shared subtrees, so copying is
/// cheap and concurrent reads are safe.
class PolyExpr {
 public:
  enum class Kind { Var, Const, Neg, Add, Mul };

  /// Variable x_index; index must be >= 1.
  static PolyExpr var(std::uint32_t index);
  static PolyExpr constant(Elem element);

  Kind kind() const noexcept;
  /// Variable index for Var, element index for Const.
  std::uint32_t value() const noexcept;
  /// Operand of Neg, left operand of Add/Mul.
  const PolyExpr& lhs() const noexcept;
  const PolyExpr& rhs() const noexcept;

  friend PolyExpr operator-(const PolyExpr& operand);
  friend PolyExpr operator+(const PolyExpr& lhs, const PolyExpr& rhs);
  friend PolyExpr operator*(const PolyExpr& lhs, const PolyExpr& rhs);

  /// Structural equality of the trees.
  friend bool operator==(const PolyExpr& lhs, const PolyExpr& rhs);

 private:
  struct Node;
  explicit PolyExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses
///
///   poly   := term (('+'|'-') term)*
///   term   := '-'? factor ('*' factor)*
///   factor := 'x' N | 'e' K | '(' poly ')'
///
/// Products associate to the left; `a - b` becomes Add(a, Neg(b)).
/// Throws SyntaxError (ErrorCode SyntaxError, ConstOutOfRange or VarIndexZero).
PolyExpr parse_poly(std::string_view text, std::size_t ring_order);
inline PolyExpr parse_poly(std::string_view text, const FiniteRing& ring) {
  return parse_poly(text, ring.order());
}

/// Text that parses back to the same tree.
std::string to_string(const PolyExpr& f);

/// Number of operations: leaves count 0, each Neg/Add/Mul adds one.
std::size_t length(const PolyExpr& f);

/// Largest variable index occurring in f, 0 if f has no variables.
std::uint32_t num_variables(const PolyExpr& f);

/// f(point) where point[j-1] is the value of x_j. Throws UnboundVariable
/// when f mentions a variable beyond point.size().
Elem evaluate(const PolyExpr& f, const FiniteRing& ring, std::span<const Elem> point);

/// Replaces every constant c by map(c), keeping the tree shape.
PolyExpr map_constants(const PolyExpr& f, const std::function<Elem(Elem)>& map);

/// Factor of a monomial: a variable x_index or a ring constant.
struct Factor {
  bool is_var = false;
  std::uint32_t index = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// sign * z_1 z_2 ... z_t with t >= 1.
struct Monomial {
  int sign = 1;
  std::vector<Factor> factors;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Sum of monomials; the empty sum is the zero polynomial.
struct StandardPoly {
  std::vector<Monomial> monomials;

  friend bool operator==(const StandardPoly&, const StandardPoly&) = default;
};

inline constexpr std::size_t kDefaultMonomialBudget = 100000;

/// Expands f into a sum of monomials equivalent to f on `ring`.
///
/// Adjacent constants are multiplied out. Monomials whose constant collapses
/// to zero are dropped, and when `nilpotency_class` is given, so is every
/// monomial with at least that many factors. No cancellation across the sum.
/// Throws BudgetExceeded if more than `budget` monomials are ever held.
StandardPoly expand_standard(const PolyExpr& f, const FiniteRing& ring,
                             std::optional<std::size_t> nilpotency_class,
                             std::size_t budget = kDefaultMonomialBudget);

Elem evaluate(const StandardPoly& sp, const FiniteRing& ring, std::span<const Elem> point);

/// Maximum number of distinct variables in a single monomial.
std::size_t max_distinct_vars(const StandardPoly& sp);

/// The standard polynomial as an expression: left-nested sum of left-nested products.
PolyExpr to_expr(const StandardPoly& sp, const FiniteRing& ring);

}  // namespace nilsolve
