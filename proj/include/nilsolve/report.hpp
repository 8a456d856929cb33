#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nilsolve/ring.hpp"

namespace nilsolve {

/// Assignment of ring elements to x1..xn.
using Point = std::vector<Elem>;

struct RangeReport {
  /// The value set, ascending by element index.
  std::vector<Elem> values;
  std::uint64_t evaluations_used = 0;
  /// One point per value: the first one met in enumeration order.
  std::map<Elem, Point> witnesses;
  std::size_t num_vars = 0;
  /// Variable bound used for the restricted set; unset for exhaustive search.
  std::optional<std::size_t> k;

  friend bool operator==(const RangeReport&, const RangeReport&) = default;
};

struct SolveVerdict {
  bool solvable = false;
  std::optional<Point> witness;
  /// Points in enumeration order up to and including the witness, or all of them.
  std::uint64_t points_examined = 0;
  std::size_t num_vars = 0;
  std::optional<std::size_t> k;

  friend bool operator==(const SolveVerdict&, const SolveVerdict&) = default;
};

struct EquivVerdict {
  bool equivalent = false;
  std::optional<Point> counterexample;
  std::uint64_t points_examined = 0;
  std::size_t num_vars = 0;
  std::optional<std::size_t> k;

  friend bool operator==(const EquivVerdict&, const EquivVerdict&) = default;
};

}  // namespace nilsolve
