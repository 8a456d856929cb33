#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace nilsolve::additive {

/// Z/p^a1 ⊕ ... ⊕ Z/p^ar with a1 <= ... <= ar.
class AbelianPGroup {
 public:
  using Element = std::vector<std::uint64_t>;

  /// Throws NotPrime, or InvalidArgument for an empty or zero exponent, or a
  /// summand that does not fit in 32 bits. Exponents are sorted.
  AbelianPGroup(std::uint32_t p, std::vector<std::uint32_t> alphas);

  std::uint32_t prime() const noexcept { return p_; }
  const std::vector<std::uint32_t>& alphas() const noexcept { return alphas_; }
  /// p^alpha_j for each summand.
  const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }
  std::size_t rank() const noexcept { return alphas_.size(); }

  /// Group order, or 0 if it does not fit in 64 bits.
  std::uint64_t order() const noexcept;
  /// sum_j (p^alpha_j - 1).
  std::uint64_t olson_sum() const noexcept;

  Element zero() const { return Element(rank(), 0); }
  /// Unit vector e_j generating the j-th summand.
  Element generator(std::size_t j) const;
  Element add(const Element& a, const Element& b) const;
  void add_to(Element& acc, const Element& b) const;
  bool contains(const Element& a) const noexcept;

  /// Mixed-radix index of an element (first summand most significant).
  std::uint64_t encode(const Element& a) const;
  Element decode(std::uint64_t index) const;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> alphas_;
  std::vector<std::uint64_t> moduli_;
};

/// Subset of the ground set H = {0, ..., n-1} as a sorted index list.
using Subset = std::vector<std::size_t>;

/// A map from subsets of H of size <= k into a p-group. Missing keys map to zero.
class SetFunction {
 public:
  static constexpr std::size_t kMaxGround = 64;

  SetFunction(AbelianPGroup group, std::size_t ground_size, std::size_t k);

  const AbelianPGroup& group() const noexcept { return group_; }
  std::size_t ground_size() const noexcept { return ground_size_; }
  std::size_t k() const noexcept { return k_; }

  /// Stores value at key (sorted, distinct, < ground_size, size <= k).
  /// Storing zero erases the key.
  void set(const Subset& key, const AbelianPGroup::Element& value);
  AbelianPGroup::Element at(const Subset& key) const;
  const std::map<Subset, AbelianPGroup::Element>& table() const noexcept { return table_; }

 private:
  AbelianPGroup group_;
  std::size_t ground_size_;
  std::size_t k_;
  std::map<Subset, AbelianPGroup::Element> table_;
};

/// Sum of phi(X) over the stored keys X contained in U.
AbelianPGroup::Element phi_bar(const SetFunction& phi, const Subset& subset);

/// k * sum_j (p^alpha_j - 1).
std::uint64_t subset_bound(const AbelianPGroup& group, std::size_t k);

/// A subset U of H with |U| <= subset_bound and phi_bar(U) = phi_bar(H).
///
/// Descends from I_0 = H: while |I_s| exceeds the bound, I_{s+1} is the first
/// proper subset V of I_s (largest size first, then lexicographic) with
/// phi_bar(V) = phi_bar(H). Throws DescentStuck if no such V exists, which
/// would contradict the small-subset theorem.
Subset find_small_subset(const SetFunction& phi);

/// Exhaustive: smallest |U| over all U ⊆ H with phi_bar(U) = phi_bar(H).
/// Limited to ground sets of at most 24 elements.
std::size_t min_matching_subset_size(const SetFunction& phi);

/// Davenport constant by exhaustive search: one more than the length of the
/// longest sequence without a nonempty zero-sum subsequence. Throws
/// GroupTooLarge above order 64.
std::uint64_t davenport_constant(const AbelianPGroup& group);

/// Extremal instance: disjoint k-sets H_{j,l} (1 <= l < p^alpha_j), taken as
/// consecutive blocks of H, carry the generator e_j; all other keys are zero.
/// Throws GroundSetTooSmall when ground_size < k * sum_j (p^alpha_j - 1),
/// InvalidArgument when k = 0.
SetFunction tightness_instance(const AbelianPGroup& group, std::size_t k, std::size_t ground_size);

// ---------------------------------------------------------------------------
// Chevalley-type instance checker

/// coefficient * x_1^e_1 * ... * x_n^e_n; missing exponents are zero.
struct IntMonomial {
  std::int64_t coefficient = 0;
  std::vector<std::uint32_t> exponents;
};

struct IntPoly {
  std::vector<IntMonomial> terms;
};

/// System f_j = 0 mod p^alpha_j over the box A_1 x ... x A_n.
struct BrinkInstance {
  std::uint32_t p = 2;
  std::vector<std::uint32_t> alphas;        // one per polynomial
  std::vector<std::vector<std::int64_t>> sets;
  std::vector<IntPoly> polys;
};

struct BrinkVerdict {
  enum class Kind { HypothesisFails, Empty, Count };
  Kind kind = Kind::HypothesisFails;
  std::uint64_t count = 0;
  /// sum_i (|A_i| - 1)
  std::uint64_t freedom = 0;
  /// sum_j (p^alpha_j - 1) deg f_j
  std::uint64_t weighted_degree = 0;

  /// False only for a single solution under the hypothesis.
  bool consistent() const noexcept { return kind != Kind::Count || count != 1; }
};

inline constexpr std::uint64_t kBrinkSearchLimit = 10'000'000;

/// Degree of f modulo `modulus`: terms whose coefficient vanishes are ignored.
std::uint32_t degree_mod(const IntPoly& f, std::uint64_t modulus);

/// Checks the degree hypothesis, then counts the common zeros in the box.
/// Throws InjectivityViolated(i) if A_i repeats a residue mod p or is empty,
/// SearchSpaceTooLarge when the box exceeds kBrinkSearchLimit points.
BrinkVerdict brink_check(const BrinkInstance& instance);

}  // namespace nilsolve::additive
