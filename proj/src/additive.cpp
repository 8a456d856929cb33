#include "nilsolve/additive.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>

#include "nilsolve/error.hpp"
#include "nilsolve/ring.hpp"

namespace nilsolve::additive {

namespace {

using Mask = std::uint64_t;

Mask to_mask(const Subset& subset) {
  Mask mask = 0;
  for (std::size_t i : subset) mask |= Mask{1} << i;
  return mask;
}

Subset from_mask(Mask mask) {
  Subset subset;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1U)
    if (mask & 1U) subset.push_back(i);
  return subset;
}

Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Visits the size-s subsets of `members` in lexicographic order as masks;
// stops when visit returns true. Returns whether it stopped.
template <class Visit>
bool for_each_combination(const std::vector<std::size_t>& members, std::size_t s, Visit&& visit) {
  const std::size_t n = members.size();
  if (s > n) return false;
  std::vector<std::size_t> pick(s);
  for (std::size_t i = 0; i < s; ++i) pick[i] = i;
  while (true) {
    Mask mask = 0;
    for (std::size_t i : pick) mask |= Mask{1} << members[i];
    if (visit(mask)) return true;
    std::size_t i = s;
    while (i > 0 && pick[i - 1] == n - s + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// phi_bar over bitmasks.
class MaskedSum {
 public:
  explicit MaskedSum(const SetFunction& phi) : group_(phi.group()) {
    for (const auto& [key, value] : phi.table()) keys_.emplace_back(to_mask(key), value);
  }

  AbelianPGroup::Element operator()(Mask subset) const {
    auto acc = group_.zero();
    for (const auto& [key, value] : keys_)
      if ((key & ~subset) == 0) group_.add_to(acc, value);
    return acc;
  }

 private:
  const AbelianPGroup& group_;
  std::vector<std::pair<Mask, AbelianPGroup::Element>> keys_;
};

std::uint64_t mod_pos(std::int64_t value, std::uint64_t modulus) {
  const auto m = static_cast<std::int64_t>(modulus);
  std::int64_t r = value % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

// ---------------------------------------------------------------------------
// AbelianPGroup

AbelianPGroup::AbelianPGroup(std::uint32_t p, std::vector<std::uint32_t> alphas)
    : p_(p), alphas_(std::move(alphas)) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (alphas_.empty()) throw Error(ErrorCode::InvalidArgument, "group needs at least one summand");
  std::sort(alphas_.begin(), alphas_.end());
  for (std::uint32_t a : alphas_) {
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "exponents must be positive");
    std::uint64_t modulus = 1;
    for (std::uint32_t i = 0; i < a; ++i) {
      modulus *= p;
      if (modulus > std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorCode::InvalidArgument, "summand too large");
    }
    moduli_.push_back(modulus);
  }
}

std::uint64_t AbelianPGroup::order() const noexcept {
  std::uint64_t order = 1;
  for (std::uint64_t m : moduli_)
    if (__builtin_mul_overflow(order, m, &order)) return 0;
  return order;
}

std::uint64_t AbelianPGroup::olson_sum() const noexcept {
  std::uint64_t sum = 0;
  for (std::uint64_t m : moduli_) sum += m - 1;
  return sum;
}

AbelianPGroup::Element AbelianPGroup::generator(std::size_t j) const {
  if (j >= rank()) throw Error(ErrorCode::InvalidArgument, "no such summand");
  Element e = zero();
  e[j] = 1;
  return e;
}

AbelianPGroup::Element AbelianPGroup::add(const Element& a, const Element& b) const {
  Element sum = a;
  add_to(sum, b);
  return sum;
}

void AbelianPGroup::add_to(Element& acc, const Element& b) const {
  for (std::size_t j = 0; j < moduli_.size(); ++j) acc[j] = (acc[j] + b[j]) % moduli_[j];
}

bool AbelianPGroup::contains(const Element& a) const noexcept {
  if (a.size() != rank()) return false;
  for (std::size_t j = 0; j < rank(); ++j)
    if (a[j] >= moduli_[j]) return false;
  return true;
}

std::uint64_t AbelianPGroup::encode(const Element& a) const {
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < rank(); ++j) index = index * moduli_[j] + a[j];
  return index;
}

AbelianPGroup::Element AbelianPGroup::decode(std::uint64_t index) const {
  Element a(rank(), 0);
  for (std::size_t j = rank(); j-- > 0;) {
    a[j] = index % moduli_[j];
    index /= moduli_[j];
  }
  return a;
}

// ---------------------------------------------------------------------------
// SetFunction

SetFunction::SetFunction(AbelianPGroup group, std::size_t ground_size, std::size_t k)
    : group_(std::move(group)), ground_size_(ground_size), k_(k) {
  if (ground_size_ > kMaxGround)
    throw Error(ErrorCode::InvalidArgument, "ground set limited to " + std::to_string(kMaxGround) + " elements");
}

void SetFunction::set(const Subset& key, const AbelianPGroup::Element& value) {
  if (key.size() > k_) throw Error(ErrorCode::InvalidArgument, "key larger than k");
  for (std::size_t i = 0; i < key.size(); ++i)
    if (key[i] >= ground_size_ || (i > 0 && key[i - 1] >= key[i]))
      throw Error(ErrorCode::InvalidArgument, "keys must be sorted distinct indices into H");
  if (!group_.contains(value)) throw Error(ErrorCode::InvalidArgument, "value is not a group element");
  if (value == group_.zero()) {
    table_.erase(key);
  } else {
    table_[key] = value;
  }
}

AbelianPGroup::Element SetFunction::at(const Subset& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? group_.zero() : it->second;
}

AbelianPGroup::Element phi_bar(const SetFunction& phi, const Subset& subset) {
  return MaskedSum(phi)(to_mask(subset));
}

std::uint64_t subset_bound(const AbelianPGroup& group, std::size_t k) { return k * group.olson_sum(); }

Subset find_small_subset(const SetFunction& phi) {
  const std::uint64_t bound = subset_bound(phi.group(), phi.k());
  const MaskedSum value(phi);
  Mask current = full_mask(phi.ground_size());
  const auto target = value(current);

  while (static_cast<std::uint64_t>(std::popcount(current)) > bound) {
    const Subset members = from_mask(current);
    bool stepped = false;
    for (std::size_t size = members.size(); size-- > 0 && !stepped;) {
      stepped = for_each_combination(members, size, [&](Mask candidate) {
        if (value(candidate) != target) return false;
        current = candidate;
        return true;
      });
    }
    if (!stepped)
      throw Error(ErrorCode::DescentStuck, "no proper subset of a " + std::to_string(members.size()) +
                                               "-element set keeps the total; bound is " + std::to_string(bound));
  }
  return from_mask(current);
}

std::size_t min_matching_subset_size(const SetFunction& phi) {
  if (phi.ground_size() > 24) throw Error(ErrorCode::SearchSpaceTooLarge, "exhaustive search limited to 24 elements");
  const MaskedSum value(phi);
  const auto target = value(full_mask(phi.ground_size()));
  std::vector<std::size_t> members(phi.ground_size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  for (std::size_t size = 0; size <= members.size(); ++size)
    if (for_each_combination(members, size, [&](Mask candidate) { return value(candidate) == target; }))
      return size;
  return members.size();  // unreachable: H itself matches
}

// ---------------------------------------------------------------------------
// Davenport constant

std::uint64_t davenport_constant(const AbelianPGroup& group) {
  const std::uint64_t order = group.order();
  if (order == 0 || order > 64) throw Error(ErrorCode::GroupTooLarge, "exhaustive search needs order <= 64");
  const auto m = static_cast<std::size_t>(order);

  std::vector<std::size_t> add(m * m), neg(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      add[a * m + b] = group.encode(group.add(group.decode(a), group.decode(b)));
      if (add[a * m + b] == 0) neg[a] = b;
    }

  // State: the set of sums of nonempty subsequences (never containing 0).
  // The longest zero-sum-free extension depends on nothing else.
  std::unordered_map<Mask, std::uint32_t> memo;
  auto longest = [&](auto&& self, Mask sums) -> std::uint32_t {
    if (auto it = memo.find(sums); it != memo.end()) return it->second;
    std::uint32_t best = 0;
    for (std::size_t g = 1; g < m; ++g) {
      if (sums & (Mask{1} << neg[g])) continue;
      Mask next = sums | (Mask{1} << g);
      for (Mask rest = sums; rest != 0; rest &= rest - 1)
        next |= Mask{1} << add[static_cast<std::size_t>(std::countr_zero(rest)) * m + g];
      best = std::max(best, 1 + self(self, next));
    }
    memo.emplace(sums, best);
    return best;
  };
  return 1 + longest(longest, 0);
}

// ---------------------------------------------------------------------------
// Tightness

SetFunction tightness_instance(const AbelianPGroup& group, std::size_t k, std::size_t ground_size) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const std::uint64_t needed = subset_bound(group, k);
  if (ground_size < needed)
    throw Error(ErrorCode::GroundSetTooSmall,
                "need " + std::to_string(needed) + " elements, got " + std::to_string(ground_size));
  SetFunction phi(group, ground_size, k);
  std::size_t next = 0;
  for (std::size_t j = 0; j < group.rank(); ++j)
    for (std::uint64_t l = 1; l < group.moduli()[j]; ++l) {
      Subset block(k);
      for (std::size_t i = 0; i < k; ++i) block[i] = next++;
      phi.set(block, group.generator(j));
    }
  return phi;
}

// ---------------------------------------------------------------------------
// Brink instances

std::uint32_t degree_mod(const IntPoly& f, std::uint64_t modulus) {
  std::uint32_t degree = 0;
  for (const auto& term : f.terms) {
    if (mod_pos(term.coefficient, modulus) == 0) continue;
    std::uint32_t d = 0;
    for (std::uint32_t e : term.exponents) d += e;
    degree = std::max(degree, d);
  }
  return degree;
}

BrinkVerdict brink_check(const BrinkInstance& instance) {
  if (!is_prime(instance.p)) throw Error(ErrorCode::NotPrime, std::to_string(instance.p) + " is not prime");
  if (instance.alphas.size() != instance.polys.size())
    throw Error(ErrorCode::InvalidArgument, "need one exponent per polynomial");
  const std::size_t n = instance.sets.size();
  const std::uint64_t p = instance.p;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& set = instance.sets[i];
    std::vector<std::uint64_t> residues;
    for (std::int64_t a : set) residues.push_back(mod_pos(a, p));
    std::sort(residues.begin(), residues.end());
    if (set.empty() || std::adjacent_find(residues.begin(), residues.end()) != residues.end())
      throw Error(ErrorCode::InjectivityViolated, "A_" + std::to_string(i + 1) + " is empty or repeats a residue");
  }

  std::vector<std::uint64_t> moduli;
  for (std::uint32_t alpha : instance.alphas) {
    if (alpha == 0) throw Error(ErrorCode::InvalidArgument, "exponents must be positive");
    std::uint64_t modulus = 1;
    for (std::uint32_t i = 0; i < alpha; ++i) {
      if (__builtin_mul_overflow(modulus, p, &modulus) || modulus > (std::uint64_t{1} << 62))
        throw Error(ErrorCode::InvalidArgument, "modulus too large");
    }
    moduli.push_back(modulus);
  }
  for (const auto& f : instance.polys)
    for (const auto& term : f.terms)
      if (term.exponents.size() > n) throw Error(ErrorCode::InvalidArgument, "monomial uses too many variables");

  BrinkVerdict verdict;
  for (const auto& set : instance.sets) verdict.freedom += set.size() - 1;
  for (std::size_t j = 0; j < moduli.size(); ++j)
    verdict.weighted_degree += (moduli[j] - 1) * degree_mod(instance.polys[j], moduli[j]);
  if (verdict.freedom <= verdict.weighted_degree) {
    verdict.kind = BrinkVerdict::Kind::HypothesisFails;
    return verdict;
  }

  std::uint64_t space = 1;
  for (const auto& set : instance.sets)
    if (__builtin_mul_overflow(space, set.size(), &space) || space > kBrinkSearchLimit)
      throw Error(ErrorCode::SearchSpaceTooLarge, "box exceeds " + std::to_string(kBrinkSearchLimit) + " points");

  std::vector<std::size_t> pick(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool all_zero = true;
    for (std::size_t j = 0; j < moduli.size() && all_zero; ++j) {
      const std::uint64_t mod = moduli[j];
      std::uint64_t sum = 0;
      for (const auto& term : instance.polys[j].terms) {
        std::uint64_t value = mod_pos(term.coefficient, mod);
        for (std::size_t i = 0; i < term.exponents.size(); ++i) {
          const std::uint64_t base = mod_pos(instance.sets[i][pick[i]], mod);
          for (std::uint32_t e = 0; e < term.exponents[i]; ++e) value = mul_mod(value, base, mod);
        }
        sum = (sum + value) % mod;
      }
      all_zero = sum == 0;
    }
    if (all_zero) ++count;

    std::size_t i = n;
    while (i > 0 && ++pick[i - 1] == instance.sets[i - 1].size()) pick[--i] = 0;
    if (i == 0) break;
  }
  verdict.kind = count == 0 ? BrinkVerdict::Kind::Empty : BrinkVerdict::Kind::Count;
  verdict.count = count;
  return verdict;
}

}  // namespace nilsolve::additive
