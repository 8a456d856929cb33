#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nilsolve {

/// Element of a finite ring, identified by its index 0..m-1 into the tables.
using Elem = std::uint32_t;

/// Largest ring order accepted by the table model. Validation is cubic in the order.
inline constexpr std::size_t kMaxRingOrder = 1024;

/// A finite ring presented by its addition and multiplication tables.
///
/// Instances are only produced by `validate_ring` (directly or through the
/// constructors below), so every FiniteRing satisfies the ring axioms. The
/// object is immutable and may be shared freely between threads.
class FiniteRing {
 public:
  std::size_t order() const noexcept { return order_; }
  Elem zero() const noexcept { return zero_; }

  Elem add(Elem a, Elem b) const noexcept { return add_[a * order_ + b]; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * order_ + b]; }
  Elem neg(Elem a) const noexcept { return neg_[a]; }

  /// Integer multiple `count * a` by repeated doubling.
  Elem scale(std::uint64_t count, Elem a) const noexcept;

  /// Row-major m*m tables, suitable for vectorized lookups.
  std::span<const Elem> add_table() const noexcept { return add_; }
  std::span<const Elem> mul_table() const noexcept { return mul_; }
  std::span<const Elem> neg_table() const noexcept { return neg_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Label of `a` if present, otherwise its index.
  std::string label(Elem a) const;

  friend bool operator==(const FiniteRing& lhs, const FiniteRing& rhs) {
    return lhs.order_ == rhs.order_ && lhs.add_ == rhs.add_ && lhs.mul_ == rhs.mul_ &&
           lhs.labels_ == rhs.labels_;
  }

 private:
  friend FiniteRing validate_ring(std::size_t, std::vector<Elem>, std::vector<Elem>,
                                  std::vector<std::string>);
  FiniteRing() = default;

  std::size_t order_ = 0;
  Elem zero_ = 0;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<std::string> labels_;
};

/// Checks every ring axiom exhaustively and derives the zero element and the
/// negation table. Throws AxiomError naming a witnessing triple on failure.
/// `labels` is either empty or holds one whitespace-free token per element.
FiniteRing validate_ring(std::size_t order, std::vector<Elem> add_table, std::vector<Elem> mul_table,
                         std::vector<std::string> labels = {});

bool is_prime(std::uint64_t n) noexcept;

/// pZ/p^aZ: the multiples of p modulo p^a. Index i stands for i*p.
FiniteRing make_scaled_zmod(std::uint32_t p, std::uint32_t a);

/// Strictly upper triangular t x t matrices over Z/pZ.
FiniteRing make_strict_upper(std::uint32_t t, std::uint32_t p);

/// Z/nZ with the zero multiplication.
FiniteRing make_zero_mul(std::uint32_t n);

/// Z/nZ with its usual multiplication (not nilpotent for n > 1).
FiniteRing make_zmod(std::uint32_t n);

/// Componentwise ring on index pairs; (i, j) maps to i * |right| + j.
FiniteRing direct_sum(const FiniteRing& left, const FiniteRing& right);

/// The chain R = R^(1) ⊇ R^(2) ⊇ ... of power ideals.
struct IdealChain {
  /// subsets[i] holds R^(i+1) as a sorted list of element indices.
  std::vector<std::vector<Elem>> subsets;
  /// Least l with R^(l) = 0, or nullopt when the chain stabilizes at a nonzero ideal.
  std::optional<std::size_t> nilpotency_class;
};

IdealChain power_ideals(const FiniteRing& ring);

inline std::optional<std::size_t> nilpotency_class(const FiniteRing& ring) {
  return power_ideals(ring).nilpotency_class;
}

/// Additive closure of `generators` (zero included), as a sorted index list.
std::vector<Elem> additive_closure(const FiniteRing& ring, std::span<const Elem> generators);

struct PrimaryComponent {
  std::uint32_t prime = 0;
  std::uint32_t exponent = 0;
  /// p^exponent, the order of the ideal.
  std::uint64_t size = 0;
  /// Element indices of the ideal, sorted.
  std::vector<Elem> elements;
  /// projection[r] = multiplier * r, an element of `elements`.
  std::vector<Elem> projection;
  /// Integer a with a = 1 mod p^exponent and a = 0 mod m / p^exponent.
  std::uint64_t multiplier = 0;
};

/// Splitting of R into ideals of pairwise coprime prime-power order, with the
/// projections onto them. Components are ordered by increasing prime.
struct PrimaryDecomposition {
  std::vector<PrimaryComponent> components;
};

PrimaryDecomposition primary_decomposition(const FiniteRing& ring);

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

}  // namespace nilsolve
