#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nilsolve/ring.hpp"

namespace nilsolve {

/// Shape of the restricted substitution set: n-tuples whose projection onto
/// the i-th primary component has at most budgets[i] nonzero coordinates.
struct SupportProfile {
  std::size_t n = 0;
  /// Bound on the number of distinct variables per monomial.
  std::size_t k = 0;
  /// budgets[i] = min(n, k * |R_i|).
  std::vector<std::size_t> budgets;
};

SupportProfile make_profile(const PrimaryDecomposition& decomposition, std::size_t n, std::size_t k);

/// Exact number of points in the set: the product over components of
/// sum_{t <= b_i} C(n, t) (|R_i| - 1)^t. Throws CountOverflow past 2^64 - 1.
std::uint64_t count_support_points(const PrimaryDecomposition& decomposition, const SupportProfile& profile);

/// Binomial coefficient; throws CountOverflow when it does not fit.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Deterministic stream over the restricted set, with random access.
///
/// Each point is c = c_1 + ... + c_s with c_i in R_i^n. Points are ordered
/// lexicographically by (c_1, ..., c_s); within a component by support size,
/// then support subset (lexicographic), then the nonzero values assigned to
/// the support (first coordinate most significant). The first point is the
/// zero tuple and no point repeats.
class SupportEnumerator {
 public:
  SupportEnumerator(const FiniteRing& ring, const PrimaryDecomposition& decomposition,
                    const SupportProfile& profile);

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t position() const noexcept { return position_; }
  bool done() const noexcept { return position_ >= size_; }

  /// Current point; valid while !done().
  std::span<const Elem> point() const noexcept { return point_; }

  void advance();
  /// Jumps to an arbitrary position in [0, size()].
  void seek(std::uint64_t position);

 private:
  struct Cursor {
    std::vector<Elem> nonzero;  // nonzero elements of R_i, ascending
    std::size_t budget = 0;
    std::uint64_t size = 0;
    std::size_t support = 0;    // current support size t
    std::vector<std::size_t> coords;
    std::vector<std::size_t> digits;

    bool advance(std::size_t n);
    void unrank(std::uint64_t rank, std::size_t n);
  };

  void rebuild_point();

  const FiniteRing* ring_;
  std::size_t n_;
  std::vector<Cursor> cursors_;
  std::uint64_t size_ = 1;
  std::uint64_t position_ = 0;
  std::vector<Elem> point_;
};

}  // namespace nilsolve
