#include "nilsolve/oracle.hpp"

#include "nilsolve/error.hpp"

namespace nilsolve {

namespace {

std::uint64_t require_space(const FiniteRing& ring, std::size_t n) {
  const auto space = oracle_space(ring.order(), n);
  if (!space)
    throw Error(ErrorCode::SearchSpaceTooLarge, std::to_string(ring.order()) + "^" + std::to_string(n) +
                                                    " substitutions exceed the oracle limit of " +
                                                    std::to_string(kOracleLimit));
  return *space;
}

// Calls visit(point) for every point of R^n; stops when visit returns false.
template <class Visit>
void for_each_point(const FiniteRing& ring, std::size_t n, Visit&& visit) {
  Point point(n, 0);
  while (true) {
    if (!visit(static_cast<const Point&>(point))) return;
    std::size_t j = n;
    while (j > 0 && ++point[j - 1] == ring.order()) point[--j] = 0;
    if (j == 0) return;
  }
}

}  // namespace

std::optional<std::uint64_t> oracle_space(std::size_t order, std::size_t n) {
  std::uint64_t space = 1;
  for (std::size_t j = 0; j < n; ++j) {
    space *= order;
    if (space > kOracleLimit) return std::nullopt;
  }
  return space;
}

RangeReport brute_range(const FiniteRing& ring, const PolyExpr& f, std::size_t n) {
  RangeReport report;
  report.num_vars = n;
  report.evaluations_used = require_space(ring, n);
  for_each_point(ring, n, [&](const Point& point) {
    report.witnesses.try_emplace(evaluate(f, ring, point), point);
    return true;
  });
  for (const auto& [value, witness] : report.witnesses) report.values.push_back(value);
  return report;
}

SolveVerdict brute_solvable(const FiniteRing& ring, const PolyExpr& f, const PolyExpr& g, std::size_t n) {
  SolveVerdict verdict;
  verdict.num_vars = n;
  require_space(ring, n);
  for_each_point(ring, n, [&](const Point& point) {
    ++verdict.points_examined;
    if (evaluate(f, ring, point) != evaluate(g, ring, point)) return true;
    verdict.solvable = true;
    verdict.witness = point;
    return false;
  });
  return verdict;
}

EquivVerdict brute_equivalent(const FiniteRing& ring, const PolyExpr& f, const PolyExpr& g, std::size_t n) {
  EquivVerdict verdict;
  verdict.num_vars = n;
  verdict.equivalent = true;
  require_space(ring, n);
  for_each_point(ring, n, [&](const Point& point) {
    ++verdict.points_examined;
    if (evaluate(f, ring, point) == evaluate(g, ring, point)) return true;
    verdict.equivalent = false;
    verdict.counterexample = point;
    return false;
  });
  return verdict;
}

}  // namespace nilsolve
